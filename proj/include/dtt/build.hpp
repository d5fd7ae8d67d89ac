#ifndef DTT_BUILD_HPP
#define DTT_BUILD_HPP

#include "dtt/check.hpp"
#include "dtt/delta_plus.hpp"

namespace dtt {

// ---------------------------------------------------------------------------
// The canonical display coinductive instances.
// ---------------------------------------------------------------------------

// SST = dCoind(<>, Type, (y : El X), []): the universal instance.
inline SpecPtr make_sst_spec() {
  auto spec = std::make_shared<DCoindSpec>();
  spec->name = "SST";
  spec->head_name = "Z";
  spec->tail_name = "S";
  spec->phi = Telescope{};
  spec->head_type = MetaTerm{Telescope{}, mk(TypeU{})};
  Telescope btel;
  btel.entries.push_back({Mod::IdSm, mk(TypeU{}), "X"});
  Telescope bbody;
  bbody.entries.push_back({Mod::IdSm, mk(El{mk(Var{0})}), "y"});
  spec->tail_params = MetaTel{btel, bbody};
  Telescope stel = btel;
  stel.entries.push_back({Mod::IdSm, mk(El{mk(Var{0})}), "y"});
  spec->sigma = MetaPSub{stel, PSub{}};
  spec->id = fresh_spec_id();
  return spec;
}

// ASST: the same without the El argument of the tail.
inline SpecPtr make_asst_spec() {
  auto spec = std::make_shared<DCoindSpec>();
  spec->name = "ASST";
  spec->head_name = "Z+";
  spec->tail_name = "S+";
  spec->phi = Telescope{};
  spec->head_type = MetaTerm{Telescope{}, mk(TypeU{})};
  Telescope btel;
  btel.entries.push_back({Mod::IdSm, mk(TypeU{}), "X"});
  spec->tail_params = MetaTel{btel, Telescope{}};
  spec->sigma = MetaPSub{btel, PSub{}};
  spec->id = fresh_spec_id();
  return spec;
}

// ---------------------------------------------------------------------------
// Destructor application with reconstruction of the implicit tower from the
// subject's type.
// ---------------------------------------------------------------------------
struct Reconstructed {
  int depth;
  PSub lower;  // parameter part and base elements, without the subject
};

inline Reconstructed reconstruct_subject(Checker& ck, const Context& g, const SpecPtr& spec,
                                         const TermPtr& subject) {
  TermPtr ty = ck.whnf(ck.infer(g, subject));
  if (auto* dc = as<DCoindTy>(ty)) {
    if (dc->spec->id != spec->id)
      fail(ErrCode::TypeMismatch, "destructor applied to an element of a different codata type");
    return {0, dc->sub};
  }
  if (auto* dd = as<DCoindDT>(ty)) {
    if (dd->spec->id != spec->id)
      fail(ErrCode::TypeMismatch, "destructor applied to an element of a different codata type");
    return {dd->depth, dd->sub};
  }
  fail(ErrCode::TypeMismatch, "destructor subject is not a coinductive element");
}

// head^{d^n} subject; trailing boundary arguments are ordinary applications.
inline TermPtr apply_head(Checker& ck, const Context& g, const SpecPtr& spec,
                          const TermPtr& subject) {
  auto r = reconstruct_subject(ck, g, spec, subject);
  PSub ps = r.lower;
  ps.comps.push_back(subject);
  return mk(HeadC{spec, r.depth, ps});
}

// tail^{d^n} subject b...  The b-part must have exactly the decalaged arity.
inline TermPtr apply_tail(Checker& ck, const Context& g, const SpecPtr& spec,
                          const TermPtr& subject, const std::vector<TermPtr>& bargs) {
  auto r = reconstruct_subject(ck, g, spec, subject);
  size_t head_slots = mask_at_depth(head_dom_mask(*spec), r.depth).size();
  size_t tail_slots = mask_at_depth(tail_dom_mask(*spec), r.depth).size();
  if (bargs.size() != tail_slots - head_slots)
    fail(ErrCode::ArityMismatch,
         "tail destructor expects " + std::to_string(tail_slots - head_slots) +
             " argument(s) at this depth, got " + std::to_string(bargs.size()));
  PSub ps = r.lower;
  ps.comps.push_back(subject);
  for (auto& b : bargs) ps.comps.push_back(b);
  return mk(TailC{spec, r.depth, ps});
}

// ---------------------------------------------------------------------------
// Simplex types: the boundary telescope in the binary-label order and the
// n-simplex type over it, built from iterated destructors.
// ---------------------------------------------------------------------------
struct SimplexResult {
  Telescope boundary;           // one entry per boundary label, in order
  std::vector<uint64_t> labels; // the label of each entry
  TermPtr top;                  // the n-simplex type over the boundary
};

namespace detail {

// The m-dimensional simplex formula over element X with boundary arguments
// given per local label (1..2^(m+1)-2 for plain, 0..2^(m+1)-2 augmented).
inline TermPtr simplex_formula(Checker& ck, const Context& g, const SpecPtr& spec,
                               bool augmented, const TermPtr& x, int m,
                               const std::vector<TermPtr>& args_by_label) {
  // args_by_label[l] holds the argument for local label l; unused slots null.
  TermPtr chain = x;
  int layers = augmented ? m + 1 : m;
  for (int k = 1; k <= layers; ++k) {
    std::vector<TermPtr> bargs;
    if (!augmented) {
      for (uint64_t l = uint64_t{1} << (k - 1); l < (uint64_t{1} << k); ++l)
        bargs.push_back(args_by_label.at(l));
    }
    chain = apply_tail(ck, g, spec, chain, bargs);
  }
  TermPtr out = apply_head(ck, g, spec, chain);
  uint64_t lo = augmented ? 0 : (uint64_t{1} << m);
  uint64_t hi = augmented ? (uint64_t{1} << (m + 1)) - 1 : (uint64_t{1} << (m + 1)) - 1;
  for (uint64_t l = lo; l < hi; ++l)
    out = mk(App{Mod::IdSm, out, args_by_label.at(l)});
  return out;
}

}  // namespace detail

inline SimplexResult simplex_type(Checker& ck, const Context& g, const SpecPtr& spec,
                                  bool augmented, const TermPtr& x, int n) {
  if (n < (augmented ? -1 : 0)) fail(ErrCode::ShapeMismatch, "simplex dimension out of range");
  SimplexResult out;
  if (augmented && n == -1) {
    out.top = mk(El{apply_head(ck, g, spec, x)});
    return out;
  }
  uint64_t top_label = (uint64_t{1} << (n + 1)) - 1;
  uint64_t first = augmented ? 0 : 1;
  // positions[label] = index of the boundary entry for that label
  std::vector<int> position(top_label + 1, -1);
  Context cur = g;
  for (uint64_t b = first; b < top_label; ++b) {
    int m = __builtin_popcountll(b) - 1;
    // Collect this entry's argument variables: the proper sub-labels of b,
    // compressed to local labels of an m-simplex.
    std::vector<TermPtr> args(uint64_t{1} << (m + 1), nullptr);
    for (uint64_t s = (b - 1) & b;; s = (s - 1) & b) {
      bool use = augmented || s != 0;
      if (use) {
        uint64_t local = 0;
        int bitpos = 0;
        for (int i = 0; i <= n; ++i) {
          uint64_t bit = uint64_t{1} << i;
          if (b & bit) {
            if (s & bit) local |= uint64_t{1} << bitpos;
            ++bitpos;
          }
        }
        int entries_before = static_cast<int>(out.boundary.size());
        args.at(local) = mk(Var{entries_before - 1 - position[s]});
      }
      if (s == 0) break;
    }
    TermPtr xs = shift_term(x, static_cast<int>(out.boundary.size()));
    TermPtr code = detail::simplex_formula(ck, cur, spec, augmented, xs, m, args);
    TermPtr ety = mk(El{code});
    position[b] = static_cast<int>(out.boundary.size());
    out.boundary.entries.push_back(
        {Mod::IdSm, ety, (m <= 0 ? (m < 0 ? "zz" : "x") : m == 1 ? "b" : "f") +
                             std::to_string(b)});
    out.labels.push_back(b);
    cur = push_var(cur, Mod::IdSm, ety, out.boundary.entries.back().hint);
  }
  // The top simplex over the full boundary.
  int mtop = n;
  std::vector<TermPtr> args(uint64_t{1} << (mtop + 1), nullptr);
  for (uint64_t s = first; s < top_label; ++s) {
    args.at(s) = mk(Var{static_cast<int>(out.boundary.size()) - 1 - position[s]});
  }
  TermPtr xs = shift_term(x, static_cast<int>(out.boundary.size()));
  out.top = mk(El{detail::simplex_formula(ck, cur, spec, augmented, xs, mtop, args)});
  return out;
}

}  // namespace dtt

#endif  // DTT_BUILD_HPP
