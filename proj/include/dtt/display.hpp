#ifndef DTT_DISPLAY_HPP
#define DTT_DISPLAY_HPP

#include "dtt/subst.hpp"
#include "dtt/term.hpp"

namespace dtt {

// ---------------------------------------------------------------------------
// Modal masks.  A telescope entry is either nontrivially modal (it never
// acquires a displayed partner) or plain; decalage doubles exactly the plain
// entries.  Entry modalities at mode sm are always of the form Tri . nu, so
// the mask carries all the shape information the display machinery needs.
// ---------------------------------------------------------------------------
inline std::vector<bool> modal_mask(const Telescope& tel) {
  std::vector<bool> m;
  m.reserve(tel.size());
  for (auto& e : tel.entries) m.push_back(!is_identity(e.mu));
  return m;
}

inline std::vector<bool> decal_mask(const std::vector<bool>& mask) {
  std::vector<bool> out;
  out.reserve(mask.size() * 2);
  for (bool b : mask) {
    out.push_back(b);
    if (!b) out.push_back(false);
  }
  return out;
}

inline std::vector<bool> mask_at_depth(std::vector<bool> mask, int depth) {
  for (int i = 0; i < depth; ++i) mask = decal_mask(mask);
  return mask;
}

inline size_t decal_size(const std::vector<bool>& mask) {
  size_t n = 0;
  for (bool b : mask) n += b ? 1 : 2;
  return n;
}

// Masks of the destructor abstraction domains.
inline std::vector<bool> head_dom_mask(const DCoindSpec& spec) {
  auto m = modal_mask(spec.phi);
  m.push_back(false);  // x : dCoind phi
  return m;
}
inline std::vector<bool> tail_dom_mask(const DCoindSpec& spec) {
  auto m = head_dom_mask(spec);
  for (auto& e : spec.tail_params.body.entries) m.push_back(!is_identity(e.mu));
  return m;
}

// ---------------------------------------------------------------------------
// Evens, odds and pairing, one decalage step at a time: sigma lives over
// T^D where T is the flat telescope described by `mask`.
// ---------------------------------------------------------------------------
inline PSub evens(const PSub& sigma, const std::vector<bool>& mask) {
  if (sigma.is_dec()) return *sigma.dec_inner;  // (s^D)^ev == s under the key
  PSub out;
  size_t i = 0;
  for (bool modal : mask) {
    if (i >= sigma.size()) fail(ErrCode::ShapeMismatch, "evens: psub too short");
    out.comps.push_back(sigma.comps[i]);
    i += modal ? 1 : 2;
  }
  if (i != sigma.size()) fail(ErrCode::ShapeMismatch, "evens: psub length mismatch");
  return out;
}

inline PSub odds(const PSub& sigma, const std::vector<bool>& mask) {
  PSub out;
  size_t i = 0;
  for (bool modal : mask) {
    if (modal) {
      if (i >= sigma.size()) fail(ErrCode::ShapeMismatch, "odds: psub too short");
      i += 1;
      continue;
    }
    if (i + 1 >= sigma.size()) fail(ErrCode::ShapeMismatch, "odds: psub too short");
    out.comps.push_back(sigma.comps[i + 1]);
    i += 2;
  }
  if (i != sigma.size()) fail(ErrCode::ShapeMismatch, "odds: psub length mismatch");
  return out;
}

inline PSub pair_psub(const PSub& ev, const PSub& od, const std::vector<bool>& mask) {
  PSub out;
  size_t i = 0, j = 0;
  for (bool modal : mask) {
    if (i >= ev.size()) fail(ErrCode::ShapeMismatch, "pair: evens too short");
    out.comps.push_back(ev.comps[i++]);
    if (!modal) {
      if (j >= od.size()) fail(ErrCode::ShapeMismatch, "pair: odds too short");
      out.comps.push_back(od.comps[j++]);
    }
  }
  if (i != ev.size() || j != od.size()) fail(ErrCode::ShapeMismatch, "pair: length mismatch");
  return out;
}

inline TermPtr mk_disp_term(const MetaTerm& fn, const PSub& sigma);
inline TermPtr mk_disp_type(const MetaTerm& fam, const PSub& sigma, const TermPtr& point);

namespace detail {

// Substitution sending the variables of `tel` to the evens of sigma (sigma
// inhabits tel^D).
inline Subst evens_subst(const Telescope& tel, const PSub& sigma) {
  return inst_subst(evens(sigma, modal_mask(tel)));
}

// Component index of each entry's even/odd slot in a psub over tel^D.
struct DPos {
  size_t even;
  size_t odd;
};
inline std::vector<DPos> dpositions(const Telescope& tel) {
  std::vector<DPos> out;
  size_t i = 0;
  for (auto& e : tel.entries) {
    if (is_identity(e.mu)) {
      out.push_back({i, i + 1});
      i += 2;
    } else {
      out.push_back({i, i});
      i += 1;
    }
  }
  return out;
}

// sigma^D componentwise: each plain component c doubles into (c under the
// evens of delta, c^d delta); modal components pass through.  The ordinary
// (non-meta) decalage is the instance w = <>, delta = [].
inline PSub decal_meta_comps(const std::vector<TermPtr>& comps,
                             const std::vector<bool>& value_mask, const Telescope& w,
                             const PSub& delta) {
  if (comps.size() != value_mask.size())
    fail(ErrCode::ShapeMismatch, "decalage: component count does not match telescope");
  Subst ev = w.empty() ? Subst{} : evens_subst(w, delta);
  PSub out;
  for (size_t i = 0; i < comps.size(); ++i) {
    out.comps.push_back(w.empty() ? comps[i] : apply_subst(comps[i], ev));
    if (!value_mask[i]) out.comps.push_back(mk_disp_term(MetaTerm{w, comps[i]}, delta));
  }
  return out;
}

}  // namespace detail

// One step of display on an applied meta-abstracted type; nullptr when the
// head constructor has no rule (the caller keeps the neutral node).
inline TermPtr disp_type_step(const MetaTerm& fam, const PSub& sigma, const TermPtr& point) {
  const TermPtr& body = fam.body;
  int ntel = static_cast<int>(fam.tel.size());
  if (auto* pi = as<Pi>(body)) {
    if (is_identity(pi->mu)) {
      // ((x:A) -> B)^d f == (x : A^ev)(x' : A^d x) -> B^d [sigma,x,x'] (f x)
      Subst ev = detail::evens_subst(fam.tel, sigma);
      TermPtr dom_ev = apply_subst(pi->dom, ev);
      MetaTerm famA1{shift_tel(fam.tel, 1), shift_term(pi->dom, 1, ntel)};
      TermPtr xprime_ty = mk_disp_type(famA1, shift_psub(sigma, 1), mk(Var{0}));
      MetaTerm famB;
      famB.tel = shift_tel(fam.tel, 2);
      famB.tel.entries.push_back({Mod::IdSm, shift_term(pi->dom, 2, ntel), pi->hint});
      famB.body = shift_term(pi->cod, 2, ntel + 1);
      PSub sig2 = shift_psub(sigma, 2);
      sig2.dec_inner = nullptr;
      sig2.comps.push_back(mk(Var{1}));
      sig2.comps.push_back(mk(Var{0}));
      TermPtr pt2 = mk(App{Mod::IdSm, shift_term(point, 2), mk(Var{1})});
      TermPtr cod = mk_disp_type(famB, sig2, pt2);
      return mk(Pi{Mod::IdSm, dom_ev, mk(Pi{Mod::IdSm, xprime_ty, cod, pi->hint + "'"}),
                   pi->hint});
    }
    // Modal domain: single binder, the variable has no displayed partner.
    Subst ev = detail::evens_subst(fam.tel, sigma);
    TermPtr dom_ev = apply_subst(pi->dom, ev);
    MetaTerm famB;
    famB.tel = shift_tel(fam.tel, 1);
    famB.tel.entries.push_back({pi->mu, shift_term(pi->dom, 1, ntel), pi->hint});
    famB.body = shift_term(pi->cod, 1, ntel + 1);
    PSub sig1 = shift_psub(sigma, 1);
    sig1.dec_inner = nullptr;
    sig1.comps.push_back(mk(Var{0}));
    TermPtr pt1 = mk(App{pi->mu, shift_term(point, 1), mk(Var{0})});
    return mk(Pi{pi->mu, dom_ev, mk_disp_type(famB, sig1, pt1), pi->hint});
  }
  if (as<TypeU>(body)) {
    // Type^d A == El A -> Type
    return mk(Pi{Mod::IdSm, mk(El{point}), mk(TypeU{}), "a"});
  }
  if (auto* el = as<El>(body)) {
    // (El A)^d a == El (A^d sigma a)
    return mk(El{mk(App{Mod::IdSm, mk_disp_term(MetaTerm{fam.tel, el->code}, sigma), point})});
  }
  if (auto* dc = as<DCoindTy>(body)) {
    // (dCoind phi)^d x: the canonical displayed coinductive type.
    PSub ps = detail::decal_meta_comps(dc->sub.comps, modal_mask(dc->spec->phi), fam.tel, sigma);
    ps.comps.push_back(point);
    return mk(DCoindDT{dc->spec, 1, ps});
  }
  if (auto* dd = as<DCoindDT>(body)) {
    auto vm = mask_at_depth(modal_mask(dd->spec->phi), dd->depth);
    for (int i = 0; i < (1 << dd->depth) - 1; ++i) vm.push_back(false);
    PSub ps = detail::decal_meta_comps(dd->sub.comps, vm, fam.tel, sigma);
    ps.comps.push_back(point);
    return mk(DCoindDT{dd->spec, dd->depth + 1, ps});
  }
  return nullptr;
}

inline TermPtr mk_disp_type(const MetaTerm& fam, const PSub& sigma, const TermPtr& point) {
  if (sigma.is_dec()) {
    // A^d sigma0^D t == (A sigma0)^d t
    MetaTerm inst_fam{Telescope{}, inst(fam, *sigma.dec_inner)};
    return mk_disp_type(inst_fam, PSub{}, point);
  }
  if (TermPtr r = disp_type_step(fam, sigma, point)) return r;
  return mk(DispT{fam, sigma, point});
}

// One step of display on an applied meta-abstracted term.
inline TermPtr disp_term_step(const MetaTerm& fn, const PSub& sigma) {
  const TermPtr& body = fn.body;
  int ntel = static_cast<int>(fn.tel.size());
  if (auto* v = as<Var>(body)) {
    if (v->idx >= ntel) return nullptr;  // ambient variable: stuck
    size_t entry = fn.tel.size() - 1 - static_cast<size_t>(v->idx);
    auto pos = detail::dpositions(fn.tel);
    if (is_identity(fn.tel.entries[entry].mu))
      return sigma.comps.at(pos[entry].odd);  // the displayed partner
    return sigma.comps.at(pos[entry].even);   // modal variables are untouched
  }
  if (auto* l = as<Lam>(body)) {
    if (!l->dom) fail(ErrCode::KernelInvariant, "display of an unannotated lambda");
    Subst ev = detail::evens_subst(fn.tel, sigma);
    TermPtr dom_ev = apply_subst(l->dom, ev);
    if (is_identity(l->mu)) {
      // (lam x. t)^d == lam x x'. t^d [sigma, x, x']
      MetaTerm famA1{shift_tel(fn.tel, 1), shift_term(l->dom, 1, ntel)};
      TermPtr dom_d = mk_disp_type(famA1, shift_psub(sigma, 1), mk(Var{0}));
      MetaTerm inner;
      inner.tel = shift_tel(fn.tel, 2);
      inner.tel.entries.push_back({l->mu, shift_term(l->dom, 2, ntel), l->hint});
      inner.body = shift_term(l->body, 2, ntel + 1);
      PSub sig2 = shift_psub(sigma, 2);
      sig2.dec_inner = nullptr;
      sig2.comps.push_back(mk(Var{1}));
      sig2.comps.push_back(mk(Var{0}));
      return mk(Lam{Mod::IdSm, dom_ev,
                    mk(Lam{Mod::IdSm, dom_d, mk_disp_term(inner, sig2), l->hint + "'"}),
                    l->hint});
    }
    // Modal binder: single lambda.
    MetaTerm inner;
    inner.tel = shift_tel(fn.tel, 1);
    inner.tel.entries.push_back({l->mu, shift_term(l->dom, 1, ntel), l->hint});
    inner.body = shift_term(l->body, 1, ntel + 1);
    PSub sig1 = shift_psub(sigma, 1);
    sig1.dec_inner = nullptr;
    sig1.comps.push_back(mk(Var{0}));
    return mk(Lam{l->mu, dom_ev, mk_disp_term(inner, sig1), l->hint});
  }
  if (auto* a = as<App>(body)) {
    Subst ev = detail::evens_subst(fn.tel, sigma);
    TermPtr fd = mk_disp_term(MetaTerm{fn.tel, a->fn}, sigma);
    TermPtr arg_ev = apply_subst(a->arg, ev);
    if (is_identity(a->mu)) {
      // (f a)^d == f^d sigma a (a^d sigma)
      TermPtr ad = mk_disp_term(MetaTerm{fn.tel, a->arg}, sigma);
      return mk(App{Mod::IdSm, mk(App{Mod::IdSm, fd, arg_ev}), ad});
    }
    return mk(App{a->mu, fd, arg_ev});  // modal application keeps one argument
  }
  if (auto* c = as<CodeT>(body)) {
    // (Code A)^d == lam a. Code (A^d sigma a)
    Subst ev = detail::evens_subst(fn.tel, sigma);
    TermPtr dom_ev = apply_subst(c->type, ev);
    MetaTerm famA{shift_tel(fn.tel, 1), shift_term(c->type, 1, ntel)};
    TermPtr inner = mk(CodeT{mk_disp_type(famA, shift_psub(sigma, 1), mk(Var{0}))});
    return mk(Lam{Mod::IdSm, dom_ev, inner, "a"});
  }
  if (auto* co = as<CorecC>(body)) {
    // corec^{d^n} sigma displays to corec^{d^(n+1)} sigma^D; it never
    // unfolds on its own.
    auto vm = mask_at_depth(modal_mask(co->prem->ups), co->depth);
    return mk(CorecC{co->spec, co->prem, co->depth + 1,
                     detail::decal_meta_comps(co->sub.comps, vm, fn.tel, sigma)});
  }
  if (auto* h = as<HeadC>(body)) {
    auto vm = mask_at_depth(head_dom_mask(*h->spec), h->depth);
    return mk(HeadC{h->spec, h->depth + 1,
                    detail::decal_meta_comps(h->sub.comps, vm, fn.tel, sigma)});
  }
  if (auto* t = as<TailC>(body)) {
    auto vm = mask_at_depth(tail_dom_mask(*t->spec), t->depth);
    return mk(TailC{t->spec, t->depth + 1,
                    detail::decal_meta_comps(t->sub.comps, vm, fn.tel, sigma)});
  }
  return nullptr;
}

inline TermPtr mk_disp_term(const MetaTerm& fn, const PSub& sigma) {
  if (sigma.is_dec()) {
    // t^d sigma0^D == (t sigma0)^d
    MetaTerm inst_fn{Telescope{}, inst(fn, *sigma.dec_inner)};
    return mk_disp_term(inst_fn, PSub{});
  }
  if (TermPtr r = disp_term_step(fn, sigma)) return r;
  return mk(DispE{fn, sigma});
}

// Ordinary display of a type or term under the box lock.
inline TermPtr disp_type0(const TermPtr& type, const TermPtr& point) {
  return mk_disp_type(MetaTerm{Telescope{}, type}, PSub{}, point);
}
inline TermPtr disp_term0(const TermPtr& t) {
  return mk_disp_term(MetaTerm{Telescope{}, t}, PSub{});
}

// ---------------------------------------------------------------------------
// Telescope decalage, one step, in place: each plain entry is followed by
// its displayed partner.  Iterating this is the presentation of
// Upsilon^{D^n}; slot order is the binary-numeral order throughout.
// ---------------------------------------------------------------------------
inline Telescope decal_tel(const Telescope& ups) {
  auto pos = detail::dpositions(ups);
  Telescope out;
  for (size_t i = 0; i < ups.size(); ++i) {
    const TEntry& e = ups.entries[i];
    size_t di = pos[i].even;  // flat index of this entry's even slot
    // Transport the type: prefix variable of entry j |-> even slot of j.
    Subst s;
    s.map.resize(i);
    for (size_t m = 0; m < i; ++m) {
      size_t j = i - 1 - m;
      s.map[m] = mk(Var{static_cast<int>(di - 1 - pos[j].even)});
    }
    s.shift = static_cast<int>(di);
    out.entries.push_back({e.mu, apply_subst(e.type, s), e.hint});
    if (is_identity(e.mu)) {
      // x' : A^d theta x over the decalaged prefix plus x.
      int shift_amb = static_cast<int>(di) + 1 - static_cast<int>(i);
      Telescope prefix;
      prefix.entries.assign(ups.entries.begin(), ups.entries.begin() + static_cast<long>(i));
      MetaTerm fam{shift_tel(prefix, shift_amb), shift_term(e.type, shift_amb, (int)i)};
      PSub theta;
      for (size_t j = 0; j < i; ++j) {
        theta.comps.push_back(mk(Var{static_cast<int>(di - pos[j].even)}));
        if (is_identity(ups.entries[j].mu))
          theta.comps.push_back(mk(Var{static_cast<int>(di - pos[j].odd)}));
      }
      out.entries.push_back({Mod::IdSm, mk_disp_type(fam, theta, mk(Var{0})), e.hint + "'"});
    }
  }
  return out;
}

// sigma^D over a flat telescope, kept marked for the display reductions.
inline PSub decal_psub(const PSub& sigma, const Telescope& tel) {
  PSub out = detail::decal_meta_comps(sigma.comps, modal_mask(tel), Telescope{}, PSub{});
  out.dec_inner = std::make_shared<PSub>(sigma);
  out.dec_tel = std::make_shared<Telescope>(tel);
  return out;
}

// sigma^d: the partial-substitution display, picking out the displayed
// components only; inhabits Upsilon^d sigma.
inline PSub disp_psub(const PSub& sigma, const Telescope& tel) {
  PSub out;
  auto mask = modal_mask(tel);
  for (size_t i = 0; i < sigma.comps.size(); ++i)
    if (!mask[i]) out.comps.push_back(disp_term0(sigma.comps[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Telescope display Upsilon^d sigma: the strict telescope of displayed
// partners.
// ---------------------------------------------------------------------------
inline Telescope display_tel(const Telescope& ups, const PSub& sigma) {
  if (sigma.size() != ups.size())
    fail(ErrCode::ShapeMismatch, "display_tel: substitution length mismatch");
  Telescope out;
  size_t produced = 0;
  for (size_t i = 0; i < ups.size(); ++i) {
    const TEntry& e = ups.entries[i];
    if (!is_identity(e.mu)) continue;
    int shift_amb = static_cast<int>(produced);
    Telescope prefix;
    prefix.entries.assign(ups.entries.begin(), ups.entries.begin() + static_cast<long>(i));
    MetaTerm fam{shift_tel(prefix, shift_amb), shift_term(e.type, shift_amb, (int)i)};
    PSub paired;
    size_t out_before = 0;
    for (size_t j = 0; j < i; ++j) {
      paired.comps.push_back(shift_term(sigma.comps[j], shift_amb));
      if (is_identity(ups.entries[j].mu)) {
        paired.comps.push_back(mk(Var{static_cast<int>(produced - 1 - out_before)}));
        ++out_before;
      }
    }
    TermPtr point = shift_term(sigma.comps[i], shift_amb);
    out.entries.push_back({Mod::IdSm, mk_disp_type(fam, paired, point), e.hint + "'"});
    ++produced;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Display and decalage of whole meta-abstractions.
// ---------------------------------------------------------------------------
inline MetaTerm meta_display(const MetaTerm& m) {
  MetaTerm out;
  out.tel = decal_tel(m.tel);
  int grow = static_cast<int>(out.tel.size()) - static_cast<int>(m.tel.size());
  MetaTerm shifted{shift_tel(m.tel, grow), shift_term(m.body, grow, (int)m.tel.size())};
  out.body = mk_disp_term(shifted, spine(out.tel.size()));
  return out;
}

inline MetaPSub meta_decal(const MetaPSub& m, const std::vector<bool>& value_mask) {
  MetaPSub out;
  out.tel = decal_tel(m.tel);
  int grow = static_cast<int>(out.tel.size()) - static_cast<int>(m.tel.size());
  std::vector<TermPtr> comps;
  comps.reserve(m.body.comps.size());
  for (auto& c : m.body.comps) comps.push_back(shift_term(c, grow, (int)m.tel.size()));
  Telescope w = shift_tel(m.tel, grow);
  out.body = detail::decal_meta_comps(comps, value_mask, w, spine(out.tel.size()));
  return out;
}

// ---------------------------------------------------------------------------
// Pi-telescopes.
// ---------------------------------------------------------------------------
inline PSub apply_pitel(const MetaPSub& lam, const PSub& sigma) { return inst_psub(lam, sigma); }

// ((phi:Phi) -> Theta)^d delta == (phi : Phi^D) -> Theta^d phi^ev (delta phi^ev)
inline PiTel display_pitel(const PiTel& pt, const MetaPSub& delta) {
  PiTel out;
  out.dom = decal_tel(pt.dom);
  size_t n = pt.dom.size();
  size_t bigN = out.dom.size();
  PSub phi_ev = evens(spine(bigN), modal_mask(pt.dom));
  Subst s = inst_subst(phi_ev);
  s.shift = static_cast<int>(bigN);
  Telescope cod_inst = apply_subst_tel(pt.cod, s);
  PSub dphi;
  {
    Subst sb = inst_subst(phi_ev);
    sb.shift = static_cast<int>(bigN);
    dphi = apply_subst_psub(delta.body, sb);
  }
  (void)n;
  out.cod = display_tel(cod_inst, dphi);
  return out;
}

// Flatten a pi-telescope into a strict telescope of pi-types, per the
// computation laws for extensions of the codomain.
inline Telescope pitel_to_types(const PiTel& pt) {
  Telescope out;
  size_t n = pt.dom.size();
  for (size_t k = 0; k < pt.cod.size(); ++k) {
    const TEntry& e = pt.cod.entries[k];
    Subst s;
    for (size_t j = 0; j < k; ++j) {
      TermPtr f = mk(Var{static_cast<int>(n + j)});
      for (size_t u = 0; u < n; ++u)
        f = mk(App{pt.dom.entries[u].mu, f, mk(Var{static_cast<int>(n - 1 - u)})});
      s.map.push_back(f);
    }
    for (size_t m = 0; m < n; ++m) s.map.push_back(mk(Var{static_cast<int>(m)}));
    s.shift = static_cast<int>(k + n);
    TermPtr b = apply_subst(e.type, s);
    for (size_t u = n; u-- > 0;) {
      TermPtr dom_u =
          shift_term(pt.dom.entries[u].type, static_cast<int>(k), static_cast<int>(u));
      b = mk(Pi{pt.dom.entries[u].mu, dom_u, b, pt.dom.entries[u].hint});
    }
    out.entries.push_back({Mod::IdSm, b, e.hint});
  }
  return out;
}

}  // namespace dtt

#endif  // DTT_DISPLAY_HPP
