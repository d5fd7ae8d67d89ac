#ifndef DTT_COIND_HPP
#define DTT_COIND_HPP

#include <atomic>

#include "dtt/display.hpp"
#include "dtt/term.hpp"

namespace dtt {

inline uint64_t fresh_spec_id() {
  static std::atomic<uint64_t> next{1};
  return next.fetch_add(1);
}

// Instantiate a meta body whose result lands under `depth` extra binders.
inline Subst inst_subst_at(const PSub& sigma, int depth) {
  Subst s = inst_subst(sigma);
  s.shift = depth;
  return s;
}

// The abstraction domain of the head destructor: (phi : Phi, x : dCoind phi).
inline Telescope head_dom(const SpecPtr& spec) {
  Telescope out = spec->phi;
  out.entries.push_back({Mod::IdSm, mk(DCoindTy{spec, spine(spec->phi.size())}), "x"});
  return out;
}

// (phi, x, b : B phi (head phi x)).
inline Telescope tail_dom(const SpecPtr& spec) {
  Telescope out = head_dom(spec);
  size_t np = spec->phi.size();
  PSub arg;
  for (size_t j = 0; j < np; ++j) arg.comps.push_back(mk(Var{static_cast<int>(np - j)}));
  PSub hargs = arg;
  hargs.comps.push_back(mk(Var{0}));
  arg.comps.push_back(mk(HeadC{spec, 0, hargs}));
  Telescope b =
      apply_subst_tel(spec->tail_params.body, inst_subst_at(arg, static_cast<int>(np) + 1));
  out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
  return out;
}

inline Telescope dom_at_depth(Telescope dom, int depth) {
  for (int i = 0; i < depth; ++i) dom = decal_tel(dom);
  return dom;
}

inline MetaTerm iter_meta_display(MetaTerm m, int n) {
  for (int i = 0; i < n; ++i) m = meta_display(m);
  return m;
}

// ---------------------------------------------------------------------------
// Computation rules.  The depth-n rules are literally the n-fold display of
// the depth-0 rules, computed through the display engine and instantiated
// at the redex data.
// ---------------------------------------------------------------------------

// head^{d^n} psub, with the deepest subject slot already weak-head reduced;
// fires when it is a corecursor of the same spec at the same depth.
inline TermPtr reduce_head_corec(const HeadC& h, const TermPtr& subject_whnf) {
  auto* co = as<CorecC>(subject_whnf);
  if (!co || co->spec->id != h.spec->id || co->depth != h.depth) return nullptr;
  MetaTerm zt{co->prem->ups, co->prem->h.body};
  return inst(iter_meta_display(zt, h.depth), co->sub);
}

// The interleaving <<upsilon, tau upsilon y>> over the tail clause context
// (ups, y : B ...): the corecursor's next state.
inline PSub corec_state_update(const PremPtr& prem) {
  size_t total = prem->tau.tel.size();
  size_t nu = prem->ups.size();
  PSub ups_spine;
  for (size_t j = 0; j < nu; ++j)
    ups_spine.comps.push_back(mk(Var{static_cast<int>(total - 1 - j)}));
  return pair_psub(ups_spine, prem->tau.body, modal_mask(prem->ups));
}

inline TermPtr reduce_tail_corec(const TailC& t, const TermPtr& subject_whnf) {
  auto* co = as<CorecC>(subject_whnf);
  if (!co || co->spec->id != t.spec->id || co->depth != t.depth) return nullptr;
  const PremPtr& prem = co->prem;
  // Depth-0 schema: tail (corec ups) y == corec^d <<ups, tau ups y>>,
  // a term over the clause context tau.tel = (ups, y : B ...).
  MetaTerm rhs{prem->tau.tel, mk(CorecC{co->spec, prem, 1, corec_state_update(prem)})};
  MetaTerm rhs_n = iter_meta_display(rhs, t.depth);
  size_t head_slots = mask_at_depth(head_dom_mask(*t.spec), t.depth).size();
  PSub delta = co->sub;
  delta.dec_inner = nullptr;
  for (size_t i = head_slots; i < t.sub.comps.size(); ++i)
    delta.comps.push_back(t.sub.comps[i]);
  return inst(rhs_n, delta);
}

// ---------------------------------------------------------------------------
// Types of the coinductive nodes, computed by displaying the depth-0 type
// schemas.  Context-free.
// ---------------------------------------------------------------------------

inline TermPtr head_node_type(const SpecPtr& spec, int n, const PSub& sub) {
  Telescope dom = head_dom(spec);
  size_t np = spec->phi.size();
  PSub phi_spine;
  for (size_t j = 0; j < np; ++j)
    phi_spine.comps.push_back(mk(Var{static_cast<int>(np - j)}));
  MetaTerm t{dom, apply_subst(spec->head_type.body,
                              inst_subst_at(phi_spine, static_cast<int>(np) + 1))};
  for (int k = 0; k < n; ++k) {
    Telescope domD = decal_tel(t.tel);
    int grow = static_cast<int>(domD.size()) - static_cast<int>(t.tel.size());
    MetaTerm shifted{shift_tel(t.tel, grow), shift_term(t.body, grow, (int)t.tel.size())};
    auto mask = mask_at_depth(head_dom_mask(*spec), k);
    PSub sp = spine(domD.size());
    TermPtr pt = mk(HeadC{spec, k, evens(sp, mask)});
    t = MetaTerm{domD, mk_disp_type(shifted, sp, pt)};
  }
  return inst(t, sub);
}

inline TermPtr tail_node_type(const SpecPtr& spec, int n, const PSub& sub) {
  Telescope dom = tail_dom(spec);
  size_t np = spec->phi.size();
  size_t total = dom.size();
  PSub phi_spine;
  for (size_t j = 0; j < np; ++j)
    phi_spine.comps.push_back(mk(Var{static_cast<int>(total - 1 - j)}));
  TermPtr xv = mk(Var{static_cast<int>(total - 1 - np)});
  PSub hargs = phi_spine;
  hargs.comps.push_back(xv);
  PSub sig_arg = phi_spine;
  sig_arg.comps.push_back(mk(HeadC{spec, 0, hargs}));
  for (size_t j = np + 1; j < total; ++j)
    sig_arg.comps.push_back(mk(Var{static_cast<int>(total - 1 - j)}));
  PSub sig = apply_subst_psub(spec->sigma.body,
                              inst_subst_at(sig_arg, static_cast<int>(total)));
  PSub phiD = pair_psub(phi_spine, sig, modal_mask(spec->phi));
  phiD.comps.push_back(xv);
  MetaTerm t{dom, mk(DCoindDT{spec, 1, phiD})};
  for (int k = 0; k < n; ++k) {
    Telescope domD = decal_tel(t.tel);
    int grow = static_cast<int>(domD.size()) - static_cast<int>(t.tel.size());
    MetaTerm shifted{shift_tel(t.tel, grow), shift_term(t.body, grow, (int)t.tel.size())};
    auto mask = mask_at_depth(tail_dom_mask(*spec), k);
    PSub sp = spine(domD.size());
    TermPtr pt = mk(TailC{spec, k, evens(sp, mask)});
    t = MetaTerm{domD, mk_disp_type(shifted, sp, pt)};
  }
  return inst(t, sub);
}

inline TermPtr corec_node_type(const SpecPtr& spec, const PremPtr& prem, int n,
                               const PSub& sub) {
  MetaTerm t{prem->ups, mk(DCoindTy{spec, prem->zeta.body})};
  for (int k = 0; k < n; ++k) {
    Telescope domD = decal_tel(t.tel);
    int grow = static_cast<int>(domD.size()) - static_cast<int>(t.tel.size());
    MetaTerm shifted{shift_tel(t.tel, grow), shift_term(t.body, grow, (int)t.tel.size())};
    auto mask = mask_at_depth(modal_mask(prem->ups), k);
    PSub sp = spine(domD.size());
    TermPtr pt = mk(CorecC{spec, prem, k, evens(sp, mask)});
    t = MetaTerm{domD, mk_disp_type(shifted, sp, pt)};
  }
  return inst(t, sub);
}

}  // namespace dtt

#endif  // DTT_COIND_HPP
