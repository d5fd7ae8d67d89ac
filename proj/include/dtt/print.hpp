#ifndef DTT_PRINT_HPP
#define DTT_PRINT_HPP

#include <sstream>
#include <string>
#include <vector>

#include "dtt/display.hpp"
#include "dtt/term.hpp"

namespace dtt {

// Deterministic textual printer.  Binder hints are freshened against the
// enclosing scope; output is stable across runs and platforms.
class Printer {
 public:
  explicit Printer(bool unicode = true) : unicode_(unicode) {}

  std::string term(const TermPtr& t, std::vector<std::string> names = {}) {
    names_ = std::move(names);
    return go(t, 0);
  }

  std::string telescope(const Telescope& tel, std::vector<std::string> names = {}) {
    names_ = std::move(names);
    std::string out;
    for (size_t i = 0; i < tel.size(); ++i) {
      const TEntry& e = tel.entries[i];
      std::string n = fresh(e.hint);
      if (i) out += " ";
      out += "(" + n + " " + annot(e.mu) + " " + go(e.type, 0) + ")";
      names_.push_back(n);
    }
    return out;
  }

  std::string mode_annot(Mod mu) { return annot(mu); }

 private:
  static constexpr int kArrow = 0;  // lowest
  static constexpr int kApp = 1;
  static constexpr int kAtom = 2;

  bool unicode_;
  std::vector<std::string> names_;

  std::string arrow() const { return unicode_ ? "→" : "->"; }
  std::string lam_sym() const { return unicode_ ? "λ" : "\\"; }

  std::string annot(Mod mu) const {
    if (is_identity(mu)) return ":";
    return std::string(":^") + mod_name_ascii(mu);
  }

  bool used(const std::string& n) const {
    for (auto& m : names_)
      if (m == n) return true;
    return false;
  }

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    if (!used(base)) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!used(cand)) return cand;
    }
  }

  std::string var_name(int idx) const {
    int pos = static_cast<int>(names_.size()) - 1 - idx;
    if (pos < 0) return "?" + std::to_string(idx);
    return names_[static_cast<size_t>(pos)];
  }

  static std::string wrap(bool cond, const std::string& s) {
    return cond ? "(" + s + ")" : s;
  }

  std::string dsup(int n) const {
    std::string out;
    out += "^";
    for (int i = 0; i < n; ++i) out += "d";
    return out;
  }

  std::string psub_args(const PSub& p) {
    std::string out;
    for (auto& c : p.comps) out += " " + go(c, kAtom);
    return out;
  }

  // Substitute the evens of sigma for the telescope variables of a stuck
  // display body, for readable output.
  TermPtr resolve(const MetaTerm& m, const PSub& sigma) {
    if (m.tel.empty()) return m.body;
    Subst s = inst_subst(evens(sigma, modal_mask(m.tel)));
    return apply_subst(m.body, s);
  }

  std::string go(const TermPtr& t, int prec) {
    if (!t) return "_";
    if (auto* v = as<Var>(t)) return var_name(v->idx);
    if (auto* p = as<Pi>(t)) {
      std::string n = fresh(p->hint);
      std::string dom = go(p->dom, 0);
      names_.push_back(n);
      std::string cod = go(p->cod, 0);
      names_.pop_back();
      return wrap(prec > kArrow,
                  "(" + n + " " + annot(p->mu) + " " + dom + ") " + arrow() + " " + cod);
    }
    if (auto* l = as<Lam>(t)) {
      std::string n = fresh(l->hint);
      names_.push_back(n);
      std::string body = go(l->body, 0);
      names_.pop_back();
      return wrap(prec > kArrow, lam_sym() + " " + n + ". " + body);
    }
    if (auto* a = as<App>(t)) {
      return wrap(prec > kApp, go(a->fn, kApp) + " " + go(a->arg, kAtom));
    }
    if (as<DiscU>(t)) return "Disc";
    if (as<TypeU>(t)) return "Type";
    if (auto* e = as<El>(t)) return wrap(prec > kApp, "El " + go(e->code, kAtom));
    if (auto* c = as<CodeT>(t)) return wrap(prec > kApp, "Code " + go(c->type, kAtom));
    if (auto* m = as<ModT>(t)) {
      std::string f = m->mu == Mod::Tri ? (unicode_ ? "△" : "Tri")
                      : m->mu == Mod::Dia ? (unicode_ ? "◇" : "Dia")
                                          : (unicode_ ? "□" : "Box");
      return wrap(prec > kApp, f + " " + go(m->inner, kAtom));
    }
    if (auto* m = as<ModI>(t)) {
      std::string f = m->mu == Mod::Tri ? "tri" : m->mu == Mod::Dia ? "dia" : "box";
      return wrap(prec > kApp, f + " " + go(m->body, kAtom));
    }
    if (auto* m = as<ModE>(t)) {
      std::string f = m->mu == Mod::Box ? (unicode_ ? "■" : "bsq")
                      : m->mu == Mod::Tri ? (unicode_ ? "▲" : "btri")
                                          : (unicode_ ? "◆" : "bdia");
      return wrap(prec > kApp, f + " " + go(m->body, kAtom));
    }
    if (auto* d = as<DispT>(t)) {
      TermPtr base = resolve(d->fam, d->sub);
      int depth = 1;
      while (auto* inner = as<DispT>(base)) {
        base = resolve(inner->fam, inner->sub);
        ++depth;
      }
      return wrap(prec > kApp,
                  go(base, kAtom) + dsup(depth) + " " + go(d->point, kAtom));
    }
    if (auto* d = as<DispE>(t)) {
      TermPtr base = resolve(d->fn, d->sub);
      int depth = 1;
      while (auto* inner = as<DispE>(base)) {
        base = resolve(inner->fn, inner->sub);
        ++depth;
      }
      return wrap(prec > kAtom, go(base, kAtom) + dsup(depth));
    }
    if (auto* d = as<DCoindTy>(t)) {
      std::string s = d->spec->name + psub_args(d->sub);
      return d->sub.comps.empty() ? d->spec->name : wrap(prec > kApp, s);
    }
    if (auto* d = as<DCoindDT>(t)) {
      return wrap(prec > kApp, d->spec->name + dsup(d->depth) + psub_args(d->sub));
    }
    if (auto* h = as<HeadC>(t)) {
      // Implicit-argument convention: print the subject only.
      const TermPtr& subj = h->sub.comps.back();
      std::string s = h->spec->head_name + (h->depth ? dsup(h->depth) : "");
      return wrap(prec > kApp, s + " " + go(subj, kAtom));
    }
    if (auto* tl = as<TailC>(t)) {
      size_t hs = mask_at_depth(head_dom_mask(*tl->spec), tl->depth).size();
      std::string s = tl->spec->tail_name + (tl->depth ? dsup(tl->depth) : "");
      s += " " + go(tl->sub.comps[hs - 1], kAtom);
      for (size_t i = hs; i < tl->sub.comps.size(); ++i)
        s += " " + go(tl->sub.comps[i], kAtom);
      return wrap(prec > kApp, s);
    }
    if (auto* c = as<CorecC>(t)) {
      std::string s = c->prem->name.empty() ? "corec" : c->prem->name;
      if (c->depth) s += dsup(c->depth);
      return wrap(prec > kApp && !c->sub.comps.empty(), s + psub_args(c->sub));
    }
    if (auto* es = as<ESub>(t)) return go(apply_subst(es->body, *es->sub), prec);
    return "?";
  }
};

inline std::string show(const TermPtr& t, bool unicode = true,
                        std::vector<std::string> names = {}) {
  Printer p(unicode);
  return p.term(t, std::move(names));
}

}  // namespace dtt

#endif  // DTT_PRINT_HPP
