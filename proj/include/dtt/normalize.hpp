#ifndef DTT_NORMALIZE_HPP
#define DTT_NORMALIZE_HPP

#include "dtt/coind.hpp"
#include "dtt/display.hpp"
#include "dtt/term.hpp"

namespace dtt {

constexpr long long kDefaultFuel = 1000000;

inline void burn(long long& fuel) {
  if (--fuel <= 0) fail(ErrCode::FuelExhausted, "normalizer fuel exhausted");
}

inline TermPtr whnf(TermPtr t, long long& fuel);

namespace detail {

// Weak-head step; nullptr when already weak-head normal.
inline TermPtr whnf_step(const TermPtr& t, long long& fuel) {
  if (auto* es = as<ESub>(t)) return apply_subst(es->body, *es->sub);
  if (auto* ap = as<App>(t)) {
    TermPtr f = whnf(ap->fn, fuel);
    if (auto* l = as<Lam>(f)) {
      Subst s;
      s.map.push_back(ap->arg);
      return apply_subst(l->body, s);
    }
    if (f != ap->fn) return mk(App{ap->mu, f, ap->arg});
    return nullptr;
  }
  if (auto* el = as<El>(t)) {
    TermPtr c = whnf(el->code, fuel);
    if (auto* ct = as<CodeT>(c)) return ct->type;
    if (c != el->code) return mk(El{c});
    return nullptr;
  }
  if (auto* ct = as<CodeT>(t)) {
    TermPtr ty = whnf(ct->type, fuel);
    if (auto* el = as<El>(ty)) return el->code;
    if (ty != ct->type) return mk(CodeT{ty});
    return nullptr;
  }
  if (auto* d = as<DispT>(t)) {
    if (d->sub.is_dec()) {
      MetaTerm inst_fam{Telescope{}, inst(d->fam, *d->sub.dec_inner)};
      return mk(DispT{inst_fam, PSub{}, d->point});
    }
    TermPtr body = whnf(d->fam.body, fuel);
    MetaTerm fam{d->fam.tel, body};
    if (TermPtr r = disp_type_step(fam, d->sub, d->point)) return r;
    if (body != d->fam.body) return mk(DispT{fam, d->sub, d->point});
    return nullptr;
  }
  if (auto* d = as<DispE>(t)) {
    if (d->sub.is_dec()) {
      MetaTerm inst_fn{Telescope{}, inst(d->fn, *d->sub.dec_inner)};
      return mk(DispE{inst_fn, PSub{}});
    }
    TermPtr body = whnf(d->fn.body, fuel);
    MetaTerm fn{d->fn.tel, body};
    if (TermPtr r = disp_term_step(fn, d->sub)) return r;
    if (body != d->fn.body) return mk(DispE{fn, d->sub});
    return nullptr;
  }
  if (auto* h = as<HeadC>(t)) {
    if (h->sub.comps.empty()) fail(ErrCode::KernelInvariant, "head with empty spine");
    TermPtr subj = whnf(h->sub.comps.back(), fuel);
    if (TermPtr r = reduce_head_corec(*h, subj)) return r;
    if (subj != h->sub.comps.back()) {
      PSub ns = h->sub;
      ns.comps.back() = subj;
      return mk(HeadC{h->spec, h->depth, ns});
    }
    return nullptr;
  }
  if (auto* tl = as<TailC>(t)) {
    size_t sidx = mask_at_depth(head_dom_mask(*tl->spec), tl->depth).size() - 1;
    if (sidx >= tl->sub.comps.size()) fail(ErrCode::KernelInvariant, "tail spine too short");
    TermPtr subj = whnf(tl->sub.comps[sidx], fuel);
    if (TermPtr r = reduce_tail_corec(*tl, subj)) return r;
    if (subj != tl->sub.comps[sidx]) {
      PSub ns = tl->sub;
      ns.comps[sidx] = subj;
      return mk(TailC{tl->spec, tl->depth, ns});
    }
    return nullptr;
  }
  return nullptr;
}

}  // namespace detail

inline TermPtr whnf(TermPtr t, long long& fuel) {
  while (TermPtr n = detail::whnf_step(t, fuel)) {
    burn(fuel);
    t = n;
  }
  return t;
}

inline PSub normalize_psub(const PSub& p, long long& fuel);
inline Telescope normalize_tel(const Telescope& tel, long long& fuel);
inline TermPtr normalize(TermPtr t, long long& fuel);

inline MetaTerm normalize_meta(const MetaTerm& m, long long& fuel) {
  return MetaTerm{normalize_tel(m.tel, fuel), normalize(m.body, fuel)};
}

inline PSub normalize_psub(const PSub& p, long long& fuel) {
  PSub out;
  out.comps.reserve(p.comps.size());
  for (auto& c : p.comps) out.comps.push_back(normalize(c, fuel));
  return out;  // decalage markers are dropped in normal forms
}

inline Telescope normalize_tel(const Telescope& tel, long long& fuel) {
  Telescope out;
  out.entries.reserve(tel.size());
  for (auto& e : tel.entries) out.entries.push_back({e.mu, normalize(e.type, fuel), e.hint});
  return out;
}

inline TermPtr normalize(TermPtr t, long long& fuel) {
  t = whnf(std::move(t), fuel);
  struct V {
    long long& fuel;
    TermPtr operator()(const Var& v) const { return mk(Var{v}); }
    TermPtr operator()(const Pi& p) const {
      return mk(Pi{p.mu, normalize(p.dom, fuel), normalize(p.cod, fuel), p.hint});
    }
    TermPtr operator()(const Lam& l) const {
      return mk(Lam{l.mu, l.dom ? normalize(l.dom, fuel) : nullptr, normalize(l.body, fuel),
                    l.hint});
    }
    TermPtr operator()(const App& a) const {
      return mk(App{a.mu, normalize(a.fn, fuel), normalize(a.arg, fuel)});
    }
    TermPtr operator()(const DiscU& d) const { return mk(DiscU{d}); }
    TermPtr operator()(const TypeU& u) const { return mk(TypeU{u}); }
    TermPtr operator()(const El& e) const { return mk(El{normalize(e.code, fuel)}); }
    TermPtr operator()(const CodeT& c) const { return mk(CodeT{normalize(c.type, fuel)}); }
    TermPtr operator()(const ModT& m) const { return mk(ModT{m.mu, normalize(m.inner, fuel)}); }
    TermPtr operator()(const ModI& m) const { return mk(ModI{m.mu, normalize(m.body, fuel)}); }
    TermPtr operator()(const ModE& m) const {
      return mk(ModE{m.mu, m.ann, normalize(m.body, fuel)});
    }
    TermPtr operator()(const DispT& d) const {
      return mk(DispT{normalize_meta(d.fam, fuel), normalize_psub(d.sub, fuel),
                      normalize(d.point, fuel)});
    }
    TermPtr operator()(const DispE& d) const {
      return mk(DispE{normalize_meta(d.fn, fuel), normalize_psub(d.sub, fuel)});
    }
    TermPtr operator()(const DCoindTy& d) const {
      return mk(DCoindTy{d.spec, normalize_psub(d.sub, fuel)});
    }
    TermPtr operator()(const DCoindDT& d) const {
      return mk(DCoindDT{d.spec, d.depth, normalize_psub(d.sub, fuel)});
    }
    TermPtr operator()(const HeadC& h) const {
      return mk(HeadC{h.spec, h.depth, normalize_psub(h.sub, fuel)});
    }
    TermPtr operator()(const TailC& h) const {
      return mk(TailC{h.spec, h.depth, normalize_psub(h.sub, fuel)});
    }
    TermPtr operator()(const CorecC& c) const {
      return mk(CorecC{c.spec, c.prem, c.depth, normalize_psub(c.sub, fuel)});
    }
    TermPtr operator()(const ESub&) const {
      fail(ErrCode::KernelInvariant, "explicit substitution survived weak-head reduction");
    }
  };
  burn(fuel);
  return std::visit(V{fuel}, t->node);
}

inline TermPtr normalize(TermPtr t) {
  long long fuel = kDefaultFuel;
  return normalize(std::move(t), fuel);
}

inline bool convert(const TermPtr& a, const TermPtr& b, long long& fuel) {
  return alpha_eq(normalize(a, fuel), normalize(b, fuel));
}

inline bool convert(const TermPtr& a, const TermPtr& b) {
  long long fuel = kDefaultFuel;
  return convert(a, b, fuel);
}

}  // namespace dtt

#endif  // DTT_NORMALIZE_HPP
