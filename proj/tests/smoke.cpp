#include "dtt/check.hpp"
#include "dtt/delta_plus.hpp"
#include <cstdio>
using namespace dtt;
int main() {
  // mode theory
  if (compose(Mod::Dia, Mod::Tri) != Mod::IdDm) return 1;
  if (compose(Mod::Tri, Mod::Box) != Mod::TriBox) return 2;
  if (!leq(Mod::Box, Mod::Dia)) return 3;
  // delta+
  auto b = delta_plus::compose(delta_plus::BinarySeq::parse("1010011"),
                               delta_plus::BinarySeq::parse("0110"));
  if (b.str() != "0010010") return 4;
  // a tiny term: (lam x. x) applied
  TermPtr id = mk(Lam{Mod::IdSm, mk(TypeU{}), mk(Var{0}), "x"});
  TermPtr app = mk(App{Mod::IdSm, id, mk(TypeU{})});
  long long fuel = 1000;
  TermPtr r = whnf(app, fuel);
  if (!as<TypeU>(r)) return 5;
  std::puts("smoke ok");
  return 0;
}
