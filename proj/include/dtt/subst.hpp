#ifndef DTT_SUBST_HPP
#define DTT_SUBST_HPP

#include <string>

#include "dtt/term.hpp"

namespace dtt {

// ---------------------------------------------------------------------------
// Context construction.  Contexts are kept canonical: no identity locks, no
// adjacent locks, and a leading lock over the empty context is normalized
// through the empty-context equations (the box lock on the empty discrete
// context is absorbed).
// ---------------------------------------------------------------------------

inline Context push_lock(Context g, Mod mu) {
  if (mod_cod(mu) != g.mode)
    fail(ErrCode::ModeMismatch,
         std::string("lock ") + mod_name_ascii(mu) + " does not fit a " + mode_name(g.mode) +
             " context");
  g.mode = mod_dom(mu);
  if (is_identity(mu)) return g;
  if (!g.entries.empty() && std::holds_alternative<CLock>(g.entries.back())) {
    Mod old = std::get<CLock>(g.entries.back()).mu;
    Mod merged = compose(old, mu);
    g.entries.pop_back();
    if (!is_identity(merged)) {
      g.mode = mod_dom(merged);
      g.entries.push_back(CLock{merged});
      // fall through to leading-lock normalization below
    } else {
      return g;
    }
  } else {
    g.entries.push_back(CLock{mu});
  }
  // Leading lock over the empty context: rewrite through () sm == ((), box).
  if (g.entries.size() == 1 && std::holds_alternative<CLock>(g.entries[0])) {
    Mod lead = std::get<CLock>(g.entries[0]).mu;
    if (mod_cod(lead) == Mode::dm) {
      if (lead == Mod::Box) g.entries.clear();  // ((),box) == () sm
    } else {
      Mod through = compose(Mod::Box, lead);
      if (is_identity(through) || through == Mod::Box) g.entries.clear();
      else g.entries[0] = CLock{through};  // ((), through) over dm
    }
  }
  return g;
}

inline Context push_var(Context g, Mod mu, TermPtr type, std::string hint = {}) {
  if (mod_cod(mu) != g.mode)
    fail(ErrCode::ModeMismatch, std::string("variable modality ") + mod_name_ascii(mu) +
                                    " does not fit a " + mode_name(g.mode) + " context");
  g.entries.push_back(CVar{mu, std::move(type), std::move(hint)});
  return g;
}

// Extend by a lock-free telescope.
inline Context push_tel(Context g, const Telescope& tel) {
  for (auto& e : tel.entries) g = push_var(g, e.mu, e.type, e.hint);
  return g;
}

inline Context canonical(const Context& g) {
  Context out = Context::empty(Mode::dm);
  // Recover the base mode by walking locks from the right.
  Mode base = g.mode;
  for (auto it = g.entries.rbegin(); it != g.entries.rend(); ++it)
    if (auto* l = std::get_if<CLock>(&*it)) base = mod_cod(l->mu);
  out.mode = base;
  for (auto& e : g.entries) {
    if (auto* l = std::get_if<CLock>(&e)) out = push_lock(out, l->mu);
    else {
      auto& v = std::get<CVar>(e);
      out = push_var(out, v.mu, v.type, v.hint);
    }
  }
  return out;
}

// Composite of the locks in the context suffix to the right of entry i
// (exclusive); identity when there are none.
inline Mod locks_right_of(const Context& g, size_t i) {
  Mod acc = mode_identity(g.mode);
  bool have = false;
  Mode right_mode = g.mode;
  // Walk right-to-left collecting, then compose left-to-right.
  std::vector<Mod> ls;
  for (size_t j = g.entries.size(); j-- > i + 1;)
    if (auto* l = std::get_if<CLock>(&g.entries[j])) ls.push_back(l->mu);
  for (auto it = ls.rbegin(); it != ls.rend(); ++it)
    acc = have ? compose(acc, *it) : (have = true, *it);
  (void)right_mode;
  return acc;
}

// Flatness: the context contains a diamond-flavoured lock not to the left of
// any triangle lock; in canonical form, the rightmost lock is Dia or TriDia.
inline bool is_flat(const Context& g) {
  if (g.mode != Mode::sm) return false;
  for (size_t j = g.entries.size(); j-- > 0;) {
    if (auto* l = std::get_if<CLock>(&g.entries[j]))
      return l->mu == Mod::Dia || l->mu == Mod::TriDia;
  }
  return false;
}

// Truncate to the prefix strictly before entry i.
inline Context prefix_of(const Context& g, size_t i) {
  Context out;
  out.entries.assign(g.entries.begin(), g.entries.begin() + static_cast<long>(i));
  Mode m = g.mode;
  for (size_t j = g.entries.size(); j-- > i;)
    if (auto* l = std::get_if<CLock>(&g.entries[j])) m = mod_cod(l->mu);
  out.mode = m;
  return out;
}

// ---------------------------------------------------------------------------
// Keys.  Locks bind no variables, so keys are identity substitutions on
// variable content; the constructors enforce the judgemental preconditions.
// ---------------------------------------------------------------------------

inline Subst make_key(Mod mu, Mod nu, const Context& /*gamma*/) {
  if (!parallel(mu, nu) || !leq(mu, nu))
    fail(ErrCode::OrderViolation, std::string("no key: ") + mod_name_ascii(mu) +
                                      " <= " + mod_name_ascii(nu) + " does not hold");
  return Subst{};
}

inline Subst exceptional_key(const Context& gamma) {
  if (!is_flat(gamma)) fail(ErrCode::NotFlat, "exceptional key requires a flat context");
  return Subst{};
}

inline Subst identity_subst() { return Subst{}; }

// [theta, lock mu]: crossing a lock leaves variable content unchanged.
inline Subst cross_lock(const Subst& theta, Mod /*mu*/) { return theta; }

// Extend a substitution by a term for one more target variable.
inline Subst extend_subst(const Subst& theta, const TermPtr& t) {
  Subst out = theta;
  out.map.insert(out.map.begin(), t);
  return out;
}

// apply(body, theta): total elimination of an explicit substitution.
inline TermPtr apply(const TermPtr& body, const Subst& theta) { return apply_subst(body, theta); }
inline Telescope apply(const Telescope& body, const Subst& theta) {
  return apply_subst_tel(body, theta);
}

// ---------------------------------------------------------------------------
// Variable lookup with the modal discipline.
// ---------------------------------------------------------------------------
struct VarInfo {
  Mod mu;
  TermPtr type;       // transported into the full context
  Subst transport;    // the weakening (keys act trivially)
  bool exceptional = false;
};

inline VarInfo lookup_var(const Context& g, int k) {
  if (k < 0) fail(ErrCode::UnboundIndex, "negative variable index");
  int seen = 0;
  for (size_t j = g.entries.size(); j-- > 0;) {
    auto* v = std::get_if<CVar>(&g.entries[j]);
    if (!v) continue;
    if (seen == k) {
      Mod lk = locks_right_of(g, j);
      bool ok = parallel(v->mu, lk) && leq(v->mu, lk);
      bool exceptional = false;
      if (!ok && v->mu == Mod::TriDia && lk == Mod::IdSm) {
        // The exceptional rule: a TriDia variable with no locks to its
        // right, over a flat prefix.
        if (is_flat(prefix_of(g, j))) {
          ok = true;
          exceptional = true;
        }
      }
      if (!ok)
        fail(ErrCode::ModalityViolation,
             std::string("variable is locked: needs ") + mod_name_ascii(v->mu) +
                 " <= " + mod_name_ascii(lk));
      int w = k + 1;  // weaken over this variable and those to its right
      return VarInfo{v->mu, shift_term(v->type, w), weaken_subst(w), exceptional};
    }
    ++seen;
  }
  fail(ErrCode::UnboundIndex, "unbound variable index " + std::to_string(k));
}

}  // namespace dtt

#endif  // DTT_SUBST_HPP
