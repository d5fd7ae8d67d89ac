#ifndef DTT_TERM_HPP
#define DTT_TERM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dtt/diag.hpp"
#include "dtt/mode.hpp"

namespace dtt {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Telescope;
struct DCoindSpec;
struct CorecPremises;
using SpecPtr = std::shared_ptr<const DCoindSpec>;
using PremPtr = std::shared_ptr<const CorecPremises>;

// ---------------------------------------------------------------------------
// Partial substitutions: elements of telescopes, stored as literal component
// lists.  A decalaged partial substitution sigma^D keeps, in addition to its
// expanded components, a syntactic marker recording the sigma it came from;
// the marker is what the reduction  A^d sigma^D t == (A sigma)^d t  matches.
// ---------------------------------------------------------------------------
struct PSub {
  std::vector<TermPtr> comps;
  std::shared_ptr<const PSub> dec_inner;       // non-null: this is dec_inner^D
  std::shared_ptr<const Telescope> dec_tel;    // telescope of dec_inner
  int dec_depth = 0;                           // tower depth of dec_inner

  PSub() = default;
  explicit PSub(std::vector<TermPtr> cs) : comps(std::move(cs)) {}
  bool is_dec() const { return dec_inner != nullptr; }
  size_t size() const { return comps.size(); }
  bool empty() const { return comps.empty(); }
};

// One telescope entry; the type lives over the telescope's prefix.
struct TEntry {
  Mod mu = Mod::IdSm;
  TermPtr type;
  std::string hint;
};

struct Telescope {
  std::vector<TEntry> entries;
  Telescope() = default;
  explicit Telescope(std::vector<TEntry> es) : entries(std::move(es)) {}
  size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  bool is_strict() const {
    for (auto& e : entries)
      if (!is_identity(e.mu)) return false;
    return true;
  }
};

// Telescope concatenation: (Upsilon | Phi) is list append.
inline Telescope concat(const Telescope& a, const Telescope& b) {
  Telescope out = a;
  out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
  return out;
}

// A framework-level binder: a term (or telescope, or partial substitution)
// abstracted over a telescope.  Body indices 0..tel.size()-1 are the
// telescope variables, rightmost first.
struct MetaTerm {
  Telescope tel;
  TermPtr body;
};
struct MetaTel {
  Telescope tel;
  Telescope body;
};
struct MetaPSub {
  Telescope tel;
  PSub body;
};

// A pi-telescope (upsilon : Upsilon) -> Theta with strict codomain.
struct PiTel {
  Telescope dom;
  Telescope cod;  // over dom
};

// ---------------------------------------------------------------------------
// Terms.  Types and terms share the sort; a type is a term used in a type
// role (Tarski universes mediate with Code/El).
// ---------------------------------------------------------------------------
struct Var { int idx = 0; };
struct Pi {
  Mod mu = Mod::IdSm;
  TermPtr dom;
  TermPtr cod;  // binds one variable
  std::string hint;
};
struct Lam {
  Mod mu = Mod::IdSm;  // modality of the binder, from the pi-type
  TermPtr dom;         // domain annotation; filled in by checking
  TermPtr body;        // binds one variable
  std::string hint;
};
struct App {
  Mod mu = Mod::IdSm;  // modality of the function's domain
  TermPtr fn;
  TermPtr arg;
};
struct DiscU {};
struct TypeU {};
struct El { TermPtr code; };
struct CodeT { TermPtr type; };
// Modal type formers Tri A / Dia A / Box A (mu in {Tri, Dia, Box}).
struct ModT { Mod mu; TermPtr inner; };
// Modal introductions.
struct ModI { Mod mu; TermPtr body; };
// Fitch-style eliminators: mu = Box is the black square, Tri the black
// triangle, Dia the black diamond.  ann is the surface annotation if any.
struct ModE { Mod mu; TermPtr ann; TermPtr body; };
// A^d sigma t: display of a meta-abstracted type, applied.
struct DispT {
  MetaTerm fam;
  PSub sub;      // over fam.tel decalaged
  TermPtr point;
};
// t^d sigma: display of a meta-abstracted term, applied.
struct DispE {
  MetaTerm fn;
  PSub sub;
};
// dCoind_{spec} phi, the type former applied to its parameters.
struct DCoindTy {
  SpecPtr spec;
  PSub sub;
};
// dCoind^{d^depth} applied: the canonical type of depth-displayed elements.
// sub holds the decalaged parameter part followed by the 2^depth - 1 base
// elements; the type former itself never computes further.
struct DCoindDT {
  SpecPtr spec;
  int depth = 1;
  PSub sub;
};
// head^{d^depth} and tail^{d^depth}, fully applied to the decalage tower of
// their abstraction telescope; El-level arguments are ordinary applications.
struct HeadC {
  SpecPtr spec;
  int depth = 0;
  PSub sub;
};
struct TailC {
  SpecPtr spec;
  int depth = 0;
  PSub sub;
};
// corec^{d^depth} applied to a state tower; never unfolds on its own.
struct CorecC {
  SpecPtr spec;
  PremPtr prem;
  int depth = 0;
  PSub sub;
};
struct Subst;
// Explicit substitution; eliminated by the first normalization step.
struct ESub {
  TermPtr body;
  std::shared_ptr<const Subst> sub;
};

using Node = std::variant<Var, Pi, Lam, App, DiscU, TypeU, El, CodeT, ModT, ModI,
                          ModE, DispT, DispE, DCoindTy, DCoindDT, HeadC, TailC, CorecC, ESub>;

struct Term {
  Node node;
  explicit Term(Node n) : node(std::move(n)) {}
};

template <class T>
TermPtr mk(T&& n) {
  return std::make_shared<Term>(Node(std::forward<T>(n)));
}

template <class T>
const T* as(const TermPtr& t) {
  return t ? std::get_if<T>(&t->node) : nullptr;
}

// ---------------------------------------------------------------------------
// Substitutions.  Locks and keys act trivially on variable content (locks
// bind no variables), so a substitution is a parallel de Bruijn map.  The
// judgement-level constructors (keys, exceptional key, lock crossing) live
// in subst.hpp where the preconditions are checked.
// ---------------------------------------------------------------------------
struct Subst {
  std::vector<TermPtr> map;  // Var k -> map[k] when k < map.size()
  int shift = 0;             // else Var(k - map.size() + shift)
};
using SubstPtr = std::shared_ptr<const Subst>;

// ---------------------------------------------------------------------------
// Indexed display coinductive types: the parameter quadruple and the
// corecursor premises.  Components must be closed over their telescopes
// (specs are formed at top level).
// ---------------------------------------------------------------------------
struct DCoindSpec {
  std::string name;
  std::string head_name;
  std::string tail_name;
  Telescope phi;        // non-uniform parameters, in the box-locked context
  MetaTerm head_type;   // A over (phi); body is a type
  MetaTel tail_params;  // B over (phi, x : A phi)
  MetaPSub sigma;       // over (phi, x, y : B phi x); body into phi^d
  uint64_t id = 0;
};

struct CorecPremises {
  std::string name;
  Telescope ups;   // state space, box-locked
  MetaPSub zeta;   // over ups; body into phi
  MetaTerm h;      // over ups; body : A (zeta ups)
  MetaPSub tau;    // over (ups, y : B (zeta ups) (h ups)); body into ups^d ups
};

// ---------------------------------------------------------------------------
// Contexts: mode-ambient lists of modal variables and locks.  Kept in
// canonical form: no identity locks, no adjacent locks, and the box lock on
// the empty discrete context is absorbed.
// ---------------------------------------------------------------------------
struct CVar {
  Mod mu;
  TermPtr type;  // well-formed under the entry's lock
  std::string hint;
};
struct CLock { Mod mu; };
using CEntry = std::variant<CVar, CLock>;

struct Context {
  Mode mode = Mode::sm;  // mode at the right end
  std::vector<CEntry> entries;

  static Context empty(Mode m) { return Context{m, {}}; }

  size_t num_vars() const {
    size_t n = 0;
    for (auto& e : entries) n += std::holds_alternative<CVar>(e);
    return n;
  }
};

// ---------------------------------------------------------------------------
// Shifting and substitution.
// ---------------------------------------------------------------------------
inline TermPtr shift_term(const TermPtr& t, int by, int cutoff = 0);
inline TermPtr apply_subst(const TermPtr& t, const Subst& s);

inline Subst lift_subst(const Subst& s, int by = 1) {
  Subst out;
  out.map.reserve(s.map.size() + static_cast<size_t>(by));
  for (int i = 0; i < by; ++i) out.map.push_back(mk(Var{i}));
  for (auto& m : s.map) out.map.push_back(shift_term(m, by));
  out.shift = s.shift + by;
  return out;
}

inline Subst weaken_subst(int by) {
  Subst s;
  s.shift = by;
  return s;
}

inline PSub apply_subst_psub(const PSub& p, const Subst& s);
inline Telescope apply_subst_tel(const Telescope& tel, const Subst& s);

namespace detail {

inline MetaTerm apply_subst_meta(const MetaTerm& m, const Subst& s) {
  MetaTerm out;
  out.tel = apply_subst_tel(m.tel, s);
  out.body = apply_subst(m.body, lift_subst(s, static_cast<int>(m.tel.size())));
  return out;
}

inline MetaTel apply_subst_metatel(const MetaTel& m, const Subst& s) {
  MetaTel out;
  out.tel = apply_subst_tel(m.tel, s);
  out.body = apply_subst_tel(m.body, lift_subst(s, static_cast<int>(m.tel.size())));
  return out;
}

inline MetaPSub apply_subst_metapsub(const MetaPSub& m, const Subst& s) {
  MetaPSub out;
  out.tel = apply_subst_tel(m.tel, s);
  out.body = apply_subst_psub(m.body, lift_subst(s, static_cast<int>(m.tel.size())));
  return out;
}

}  // namespace detail

inline PSub apply_subst_psub(const PSub& p, const Subst& s) {
  PSub out;
  out.comps.reserve(p.comps.size());
  for (auto& c : p.comps) out.comps.push_back(apply_subst(c, s));
  if (p.is_dec()) {
    out.dec_inner = std::make_shared<PSub>(apply_subst_psub(*p.dec_inner, s));
    out.dec_tel = std::make_shared<Telescope>(apply_subst_tel(*p.dec_tel, s));
    out.dec_depth = p.dec_depth;
  }
  return out;
}

inline Telescope apply_subst_tel(const Telescope& tel, const Subst& s) {
  Telescope out;
  out.entries.reserve(tel.entries.size());
  int i = 0;
  for (auto& e : tel.entries) {
    out.entries.push_back({e.mu, apply_subst(e.type, lift_subst(s, i)), e.hint});
    ++i;
  }
  return out;
}

inline TermPtr apply_subst(const TermPtr& t, const Subst& s) {
  if (!t) return t;
  struct V {
    const Subst& s;
    TermPtr operator()(const Var& v) const {
      size_t k = static_cast<size_t>(v.idx);
      if (k < s.map.size()) return s.map[k];
      return mk(Var{v.idx - static_cast<int>(s.map.size()) + s.shift});
    }
    TermPtr operator()(const Pi& p) const {
      return mk(Pi{p.mu, apply_subst(p.dom, s), apply_subst(p.cod, lift_subst(s)), p.hint});
    }
    TermPtr operator()(const Lam& l) const {
      return mk(Lam{l.mu, l.dom ? apply_subst(l.dom, s) : nullptr,
                    apply_subst(l.body, lift_subst(s)), l.hint});
    }
    TermPtr operator()(const App& a) const {
      return mk(App{a.mu, apply_subst(a.fn, s), apply_subst(a.arg, s)});
    }
    TermPtr operator()(const DiscU&) const { return mk(DiscU{}); }
    TermPtr operator()(const TypeU&) const { return mk(TypeU{}); }
    TermPtr operator()(const El& e) const { return mk(El{apply_subst(e.code, s)}); }
    TermPtr operator()(const CodeT& c) const { return mk(CodeT{apply_subst(c.type, s)}); }
    TermPtr operator()(const ModT& m) const { return mk(ModT{m.mu, apply_subst(m.inner, s)}); }
    TermPtr operator()(const ModI& m) const { return mk(ModI{m.mu, apply_subst(m.body, s)}); }
    TermPtr operator()(const ModE& m) const {
      return mk(ModE{m.mu, m.ann ? apply_subst(m.ann, s) : nullptr, apply_subst(m.body, s)});
    }
    TermPtr operator()(const DispT& d) const {
      return mk(DispT{detail::apply_subst_meta(d.fam, s), apply_subst_psub(d.sub, s),
                      apply_subst(d.point, s)});
    }
    TermPtr operator()(const DispE& d) const {
      return mk(DispE{detail::apply_subst_meta(d.fn, s), apply_subst_psub(d.sub, s)});
    }
    TermPtr operator()(const DCoindTy& d) const {
      return mk(DCoindTy{d.spec, apply_subst_psub(d.sub, s)});
    }
    TermPtr operator()(const DCoindDT& d) const {
      return mk(DCoindDT{d.spec, d.depth, apply_subst_psub(d.sub, s)});
    }
    TermPtr operator()(const HeadC& h) const {
      return mk(HeadC{h.spec, h.depth, apply_subst_psub(h.sub, s)});
    }
    TermPtr operator()(const TailC& h) const {
      return mk(TailC{h.spec, h.depth, apply_subst_psub(h.sub, s)});
    }
    TermPtr operator()(const CorecC& c) const {
      return mk(CorecC{c.spec, c.prem, c.depth, apply_subst_psub(c.sub, s)});
    }
    TermPtr operator()(const ESub& e) const {
      // Composition is eliminated on the spot: push the stored substitution
      // first, then this one.
      return apply_subst(apply_subst(e.body, *e.sub), s);
    }
  };
  return std::visit(V{s}, t->node);
}

inline TermPtr shift_term(const TermPtr& t, int by, int cutoff) {
  if (by == 0) return t;
  Subst s;
  s.map.reserve(static_cast<size_t>(cutoff));
  for (int i = 0; i < cutoff; ++i) s.map.push_back(mk(Var{i}));
  s.shift = cutoff + by;
  return apply_subst(t, s);
}

inline PSub shift_psub(const PSub& p, int by, int cutoff = 0) {
  if (by == 0) return p;
  Subst s;
  for (int i = 0; i < cutoff; ++i) s.map.push_back(mk(Var{i}));
  s.shift = cutoff + by;
  return apply_subst_psub(p, s);
}

inline Telescope shift_tel(const Telescope& tel, int by, int cutoff = 0) {
  if (by == 0) return tel;
  Subst s;
  for (int i = 0; i < cutoff; ++i) s.map.push_back(mk(Var{i}));
  s.shift = cutoff + by;
  return apply_subst_tel(tel, s);
}

// Instantiate a meta-abstraction at a partial substitution (the meta beta
// rule): telescope variables become the components.
inline Subst inst_subst(const PSub& sigma) {
  Subst s;
  s.map.reserve(sigma.comps.size());
  for (auto it = sigma.comps.rbegin(); it != sigma.comps.rend(); ++it) s.map.push_back(*it);
  s.shift = 0;
  return s;
}

inline TermPtr inst(const MetaTerm& m, const PSub& sigma) {
  if (sigma.comps.size() != m.tel.size())
    fail(ErrCode::ShapeMismatch, "meta-application arity mismatch");
  return apply_subst(m.body, inst_subst(sigma));
}

inline Telescope inst_tel(const MetaTel& m, const PSub& sigma) {
  if (sigma.comps.size() != m.tel.size())
    fail(ErrCode::ShapeMismatch, "meta-application arity mismatch");
  return apply_subst_tel(m.body, inst_subst(sigma));
}

inline PSub inst_psub(const MetaPSub& m, const PSub& sigma) {
  if (sigma.comps.size() != m.tel.size())
    fail(ErrCode::ShapeMismatch, "meta-application arity mismatch");
  return apply_subst_psub(m.body, inst_subst(sigma));
}

// The generic spine [Var(n-1), ..., Var 0] inhabiting a telescope of size n
// in a context extended by exactly that telescope.
inline PSub spine(size_t n) {
  PSub p;
  p.comps.reserve(n);
  for (size_t i = 0; i < n; ++i) p.comps.push_back(mk(Var{static_cast<int>(n - 1 - i)}));
  return p;
}

// ---------------------------------------------------------------------------
// Alpha equality: structural equality of nameless terms.  Binder hints and
// eliminator annotations are ignored; modality annotations are part of the
// identity.
// ---------------------------------------------------------------------------
inline bool alpha_eq(const TermPtr& a, const TermPtr& b);

inline bool alpha_eq_psub(const PSub& a, const PSub& b) {
  if (a.comps.size() != b.comps.size()) return false;
  for (size_t i = 0; i < a.comps.size(); ++i)
    if (!alpha_eq(a.comps[i], b.comps[i])) return false;
  return true;
}

inline bool alpha_eq_tel(const Telescope& a, const Telescope& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.entries[i].mu != b.entries[i].mu) return false;
    if (!alpha_eq(a.entries[i].type, b.entries[i].type)) return false;
  }
  return true;
}

inline bool alpha_eq_meta(const MetaTerm& a, const MetaTerm& b) {
  return alpha_eq_tel(a.tel, b.tel) && alpha_eq(a.body, b.body);
}

inline bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  struct V {
    const TermPtr& other;
    bool operator()(const Var& x) const { return as<Var>(other)->idx == x.idx; }
    bool operator()(const Pi& x) const {
      auto* o = as<Pi>(other);
      return o->mu == x.mu && alpha_eq(x.dom, o->dom) && alpha_eq(x.cod, o->cod);
    }
    bool operator()(const Lam& x) const {
      auto* o = as<Lam>(other);
      return o->mu == x.mu && alpha_eq(x.body, o->body);
    }
    bool operator()(const App& x) const {
      auto* o = as<App>(other);
      return o->mu == x.mu && alpha_eq(x.fn, o->fn) && alpha_eq(x.arg, o->arg);
    }
    bool operator()(const DiscU&) const { return true; }
    bool operator()(const TypeU&) const { return true; }
    bool operator()(const El& x) const { return alpha_eq(x.code, as<El>(other)->code); }
    bool operator()(const CodeT& x) const { return alpha_eq(x.type, as<CodeT>(other)->type); }
    bool operator()(const ModT& x) const {
      auto* o = as<ModT>(other);
      return o->mu == x.mu && alpha_eq(x.inner, o->inner);
    }
    bool operator()(const ModI& x) const {
      auto* o = as<ModI>(other);
      return o->mu == x.mu && alpha_eq(x.body, o->body);
    }
    bool operator()(const ModE& x) const {
      auto* o = as<ModE>(other);
      return o->mu == x.mu && alpha_eq(x.body, o->body);
    }
    bool operator()(const DispT& x) const {
      auto* o = as<DispT>(other);
      return alpha_eq_meta(x.fam, o->fam) && alpha_eq_psub(x.sub, o->sub) &&
             alpha_eq(x.point, o->point);
    }
    bool operator()(const DispE& x) const {
      auto* o = as<DispE>(other);
      return alpha_eq_meta(x.fn, o->fn) && alpha_eq_psub(x.sub, o->sub);
    }
    bool operator()(const DCoindTy& x) const {
      auto* o = as<DCoindTy>(other);
      return x.spec->id == o->spec->id && alpha_eq_psub(x.sub, o->sub);
    }
    bool operator()(const DCoindDT& x) const {
      auto* o = as<DCoindDT>(other);
      return x.spec->id == o->spec->id && x.depth == o->depth && alpha_eq_psub(x.sub, o->sub);
    }
    bool operator()(const HeadC& x) const {
      auto* o = as<HeadC>(other);
      return x.spec->id == o->spec->id && x.depth == o->depth && alpha_eq_psub(x.sub, o->sub);
    }
    bool operator()(const TailC& x) const {
      auto* o = as<TailC>(other);
      return x.spec->id == o->spec->id && x.depth == o->depth && alpha_eq_psub(x.sub, o->sub);
    }
    bool operator()(const CorecC& x) const {
      auto* o = as<CorecC>(other);
      return x.spec->id == o->spec->id && x.prem == o->prem && x.depth == o->depth &&
             alpha_eq_psub(x.sub, o->sub);
    }
    bool operator()(const ESub& x) const {
      auto* o = as<ESub>(other);
      return alpha_eq(apply_subst(x.body, *x.sub), apply_subst(o->body, *o->sub));
    }
  };
  return std::visit(V{b}, a->node);
}

}  // namespace dtt

#endif  // DTT_TERM_HPP
