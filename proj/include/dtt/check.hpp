#ifndef DTT_CHECK_HPP
#define DTT_CHECK_HPP

#include "dtt/coind.hpp"
#include "dtt/display.hpp"
#include "dtt/normalize.hpp"
#include "dtt/subst.hpp"

namespace dtt {

// Bidirectional type checking.  A session owns its fuel budget; values
// crossing sessions must be closed normal forms.
class Checker {
 public:
  explicit Checker(long long fuel = kDefaultFuel) : fuel_(fuel) {}

  long long& fuel() { return fuel_; }

  TermPtr whnf(TermPtr t) { return dtt::whnf(std::move(t), fuel_); }
  TermPtr normalize(TermPtr t) { return dtt::normalize(std::move(t), fuel_); }
  bool convert(const Context&, const TermPtr& a, const TermPtr& b) {
    return dtt::convert(a, b, fuel_);
  }

  static TermPtr universe(Mode m) {
    return m == Mode::sm ? mk(TypeU{}) : TermPtr(mk(DiscU{}));
  }

  // -------------------------------------------------------------------------
  // Type validity.
  // -------------------------------------------------------------------------
  void check_type(const Context& g, const TermPtr& type) {
    TermPtr t = whnf(type);
    if (auto* pi = as<Pi>(t)) {
      if (mod_cod(pi->mu) != g.mode)
        fail(ErrCode::ModeMismatch, "pi binder modality does not land in this mode");
      check_type(push_lock(g, pi->mu), pi->dom);
      check_type(push_var(g, pi->mu, pi->dom, pi->hint), pi->cod);
      return;
    }
    if (as<TypeU>(t)) {
      if (g.mode != Mode::sm) fail(ErrCode::ModeMismatch, "Type lives at mode sm");
      return;
    }
    if (as<DiscU>(t)) {
      if (g.mode != Mode::dm) fail(ErrCode::ModeMismatch, "Disc lives at mode dm");
      return;
    }
    if (auto* el = as<El>(t)) {
      check(g, el->code, universe(g.mode));
      return;
    }
    if (auto* mt = as<ModT>(t)) {
      switch (mt->mu) {
        case Mod::Box:
          if (g.mode != Mode::dm) fail(ErrCode::ModeMismatch, "Box A is a dm type");
          check_type(push_lock(g, Mod::Box), mt->inner);
          return;
        case Mod::Tri:
          if (g.mode != Mode::sm) fail(ErrCode::ModeMismatch, "Tri A is an sm type");
          check_type(push_lock(g, Mod::Tri), mt->inner);
          return;
        case Mod::Dia:
          if (g.mode != Mode::dm) fail(ErrCode::ModeMismatch, "Dia A is a dm type");
          check_type(push_lock(g, Mod::Dia), mt->inner);
          return;
        default:
          fail(ErrCode::KernelInvariant, "unknown modal type former");
      }
    }
    if (auto* d = as<DispT>(t)) {
      Context lg = push_tel(push_lock(g, Mod::TriBox), d->fam.tel);
      check_type(lg, d->fam.body);
      check_psub(g, d->sub, decal_tel(d->fam.tel));
      TermPtr ptty = apply_subst(d->fam.body,
                                 inst_subst(evens(d->sub, modal_mask(d->fam.tel))));
      check(g, d->point, ptty);
      return;
    }
    if (auto* dc = as<DCoindTy>(t)) {
      check_psub(g, dc->sub, dc->spec->phi);
      return;
    }
    if (as<DCoindDT>(t)) return;  // produced by the engine; shape-checked there
    fail(ErrCode::UniverseExpected, "not a type");
  }

  // Components of sigma check entrywise under each entry's lock.
  void check_psub(const Context& g, const PSub& sigma, const Telescope& tel) {
    if (sigma.comps.size() != tel.size())
      fail(ErrCode::ShapeMismatch, "partial substitution length mismatch");
    for (size_t i = 0; i < tel.size(); ++i) {
      PSub prefix;
      prefix.comps.assign(sigma.comps.begin(), sigma.comps.begin() + static_cast<long>(i));
      TermPtr ety = apply_subst(tel.entries[i].type, inst_subst(prefix));
      Context lg = push_lock(g, tel.entries[i].mu);
      check(lg, sigma.comps[i], ety);
    }
  }

  // -------------------------------------------------------------------------
  // Inference.
  // -------------------------------------------------------------------------
  TermPtr infer(const Context& g, const TermPtr& t) {
    if (auto* v = as<Var>(t)) return normalize(lookup_var(g, v->idx).type);
    if (auto* l = as<Lam>(t)) {
      if (!l->dom) fail(ErrCode::AnnotationRequired, "bare lambda in inference position");
      Context eg = push_var(g, l->mu, l->dom, l->hint);
      TermPtr bt = infer(eg, l->body);
      return mk(Pi{l->mu, l->dom, bt, l->hint});
    }
    if (auto* a = as<App>(t)) {
      TermPtr tf = whnf(infer(g, a->fn));
      auto* pi = as<Pi>(tf);
      if (!pi) fail(ErrCode::NotAFunction, "application head is not a function");
      if (pi->mu != a->mu)
        fail(ErrCode::KernelInvariant, "application modality disagrees with the pi type");
      check(push_lock(g, pi->mu), a->arg, pi->dom);
      Subst s;
      s.map.push_back(a->arg);
      return normalize(apply_subst(pi->cod, s));
    }
    if (auto* c = as<CodeT>(t)) {
      check_type(g, c->type);
      return universe(g.mode);
    }
    if (auto* mi = as<ModI>(t)) {
      Mode outer = mi->mu == Mod::Tri ? Mode::sm : Mode::dm;
      if (g.mode != outer) fail(ErrCode::ModeMismatch, "modal intro at the wrong mode");
      Context lg = push_lock(g, mi->mu);
      TermPtr inner = infer(lg, mi->body);
      return mk(ModT{mi->mu, inner});
    }
    if (auto* me = as<ModE>(t)) {
      switch (me->mu) {
        case Mod::Box: {  // black square eliminates Box at mode sm
          if (g.mode != Mode::sm) fail(ErrCode::ModeMismatch, "black square at mode sm");
          TermPtr it = whnf(infer(push_lock(g, Mod::Tri), me->body));
          auto* m = as<ModT>(it);
          if (!m || m->mu != Mod::Box)
            fail(ErrCode::TypeMismatch, "black square expects a Box type");
          if (me->ann && !convert(g, me->ann, m->inner))
            fail(ErrCode::TypeMismatch, "black square annotation mismatch");
          return normalize(m->inner);
        }
        case Mod::Tri: {  // black triangle eliminates Tri at mode dm
          if (g.mode != Mode::dm) fail(ErrCode::ModeMismatch, "black triangle at mode dm");
          TermPtr it = whnf(infer(push_lock(g, Mod::Dia), me->body));
          auto* m = as<ModT>(it);
          if (!m || m->mu != Mod::Tri)
            fail(ErrCode::TypeMismatch, "black triangle expects a Tri type");
          if (me->ann && !convert(g, me->ann, m->inner))
            fail(ErrCode::TypeMismatch, "black triangle annotation mismatch");
          return normalize(m->inner);
        }
        case Mod::Dia: {  // black diamond needs a flat context
          if (g.mode != Mode::sm) fail(ErrCode::ModeMismatch, "black diamond at mode sm");
          if (!is_flat(g)) fail(ErrCode::NotFlat, "black diamond requires a flat context");
          TermPtr it = whnf(infer(push_lock(g, Mod::Tri), me->body));
          auto* m = as<ModT>(it);
          if (!m || m->mu != Mod::Dia)
            fail(ErrCode::TypeMismatch, "black diamond expects a Dia type");
          if (me->ann && !convert(g, me->ann, m->inner))
            fail(ErrCode::TypeMismatch, "black diamond annotation mismatch");
          return normalize(m->inner);
        }
        default:
          fail(ErrCode::KernelInvariant, "unknown modal eliminator");
      }
    }
    if (auto* d = as<DispE>(t)) {
      Context lg = push_tel(push_lock(g, Mod::TriBox), d->fn.tel);
      TermPtr bt = infer(lg, d->fn.body);
      check_psub(g, d->sub, decal_tel(d->fn.tel));
      TermPtr pt = apply_subst(d->fn.body, inst_subst(evens(d->sub, modal_mask(d->fn.tel))));
      return normalize(mk_disp_type(MetaTerm{d->fn.tel, bt}, d->sub, pt));
    }
    if (auto* h = as<HeadC>(t)) {
      check_psub(g, h->sub, dom_at_depth(head_dom(h->spec), h->depth));
      return normalize(head_node_type(h->spec, h->depth, h->sub));
    }
    if (auto* tl = as<TailC>(t)) {
      check_psub(g, tl->sub, dom_at_depth(tail_dom(tl->spec), tl->depth));
      return normalize(tail_node_type(tl->spec, tl->depth, tl->sub));
    }
    if (auto* co = as<CorecC>(t)) {
      check_psub(g, co->sub, dom_at_depth(co->prem->ups, co->depth));
      return normalize(corec_node_type(co->spec, co->prem, co->depth, co->sub));
    }
    if (auto* es = as<ESub>(t)) return infer(g, apply_subst(es->body, *es->sub));
    fail(ErrCode::UniverseExpected, "term expected (type formers are checked as types)");
  }

  // Returns the elaborated term (lambdas acquire their annotations here).
  TermPtr check(const Context& g, const TermPtr& t, const TermPtr& type) {
    TermPtr want = whnf(type);
    if (auto* l = as<Lam>(t)) {
      auto* pi = as<Pi>(want);
      if (!pi) fail(ErrCode::TypeMismatch, "lambda against a non-function type");
      if (l->dom) {
        if (!convert(g, l->dom, pi->dom))
          fail(ErrCode::TypeMismatch, "lambda annotation disagrees with expected domain");
      }
      Context eg = push_var(g, pi->mu, pi->dom, l->hint);
      TermPtr body = check(eg, l->body, pi->cod);
      return mk(Lam{pi->mu, pi->dom, body, l->hint});
    }
    TermPtr got = infer(g, t);
    if (!convert(g, got, want))
      fail(ErrCode::TypeMismatch, "type mismatch");
    return t;
  }

  // -------------------------------------------------------------------------
  // dCoind formation and the corecursor side condition.
  // -------------------------------------------------------------------------
  void check_spec(const Context& g, const DCoindSpec& spec) {
    Context lg = push_lock(g, Mod::TriBox);
    check_tel(lg, spec.phi);
    Context pg = push_tel(lg, spec.phi);
    check_type(pg, spec.head_type.body);
    Context bg = push_var(pg, Mod::IdSm, spec.head_type.body, "x");
    check_tel(bg, spec.tail_params.body);
    Context sg = push_tel(bg, spec.tail_params.body);
    // sigma : Phi^d phi, with phi the prefix spine.
    size_t np = spec.phi.size(), nb = spec.tail_params.body.size();
    size_t total = np + 1 + nb;
    PSub phi_spine;
    for (size_t j = 0; j < np; ++j)
      phi_spine.comps.push_back(mk(Var{static_cast<int>(total - 1 - j)}));
    Telescope phid = display_tel(shift_tel(spec.phi, static_cast<int>(total)), phi_spine);
    check_psub(sg, spec.sigma.body, phid);
  }

  void check_tel(const Context& g, const Telescope& tel) {
    Context cur = g;
    for (auto& e : tel.entries) {
      check_type(push_lock(cur, e.mu), e.type);
      cur = push_var(cur, e.mu, e.type, e.hint);
    }
  }

  // Builds the corecursor after verifying the side condition
  //   zeta^d <<ups, tau ups y>> == sigma (zeta ups) (h ups) y.
  TermPtr check_corec(const Context& g, const SpecPtr& spec, const PremPtr& prem,
                      const PSub& state) {
    Context lg = push_lock(g, Mod::TriBox);
    check_tel(lg, prem->ups);
    Context ug = push_tel(lg, prem->ups);
    check_psub(ug, prem->zeta.body, shift_tel_into(spec->phi, prem->ups.size()));
    // h : A (zeta ups)
    TermPtr aty = apply_subst(
        spec->head_type.body,
        inst_subst_at(prem->zeta.body, static_cast<int>(prem->ups.size())));
    check(ug, prem->h.body, aty);
    // tau over (ups, y : B (zeta ups) (h ups)); its target is ups^d ups.
    PSub bz = prem->zeta.body;
    bz.comps.push_back(prem->h.body);
    Telescope bt = apply_subst_tel(
        spec->tail_params.body,
        inst_subst_at(bz, static_cast<int>(prem->ups.size())));
    Telescope clause_tel = concat(prem->ups, bt);
    if (!alpha_eq_tel(clause_tel, prem->tau.tel))
      fail(ErrCode::SchemaViolation, "corecursor premises have an unexpected clause context");
    Context cg = push_tel(lg, clause_tel);
    size_t total = clause_tel.size();
    PSub ups_spine;
    for (size_t j = 0; j < prem->ups.size(); ++j)
      ups_spine.comps.push_back(mk(Var{static_cast<int>(total - 1 - j)}));
    Telescope upsd =
        display_tel(shift_tel(prem->ups, static_cast<int>(total)), ups_spine);
    check_psub(cg, prem->tau.body, upsd);

    // Side condition, checked under the generic extension.
    PSub pairing = corec_state_update(prem);
    PSub lhs;
    auto pm = modal_mask(spec->phi);
    for (size_t j = 0; j < prem->zeta.body.comps.size(); ++j) {
      if (pm[j]) continue;
      // The zeta component re-binds ups inside the meta; its ambient skips
      // the whole clause context.
      MetaTerm comp{shift_tel(prem->ups, static_cast<int>(total)),
                    shift_term(prem->zeta.body.comps[j], static_cast<int>(total),
                               static_cast<int>(prem->ups.size()))};
      lhs.comps.push_back(mk_disp_term(comp, pairing));
    }
    PSub sig_arg = prem->zeta.body;
    sig_arg.comps.push_back(prem->h.body);
    // zeta/h live over ups; weaken them across the y-binders wholesale.
    PSub sig_arg_sh;
    for (auto& c : sig_arg.comps)
      sig_arg_sh.comps.push_back(shift_term(c, static_cast<int>(bt.size())));
    for (size_t j = 0; j < bt.size(); ++j)
      sig_arg_sh.comps.push_back(mk(Var{static_cast<int>(bt.size() - 1 - j)}));
    PSub rhs = apply_subst_psub(spec->sigma.body,
                                inst_subst_at(sig_arg_sh, static_cast<int>(total)));
    if (lhs.comps.size() != rhs.comps.size())
      fail(ErrCode::SideConditionFailed, "corecursor side condition arity mismatch");
    for (size_t j = 0; j < lhs.comps.size(); ++j) {
      if (!convert(cg, lhs.comps[j], rhs.comps[j]))
        fail(ErrCode::SideConditionFailed,
             "corecursor side condition failed: state reindexing disagrees with sigma");
    }
    return mk(CorecC{spec, prem, 0, state});
  }

 private:
  static Telescope shift_tel_into(const Telescope& tel, size_t binders) {
    return shift_tel(tel, static_cast<int>(binders));
  }

  long long fuel_;
};

}  // namespace dtt

#endif  // DTT_CHECK_HPP
