#ifndef DTT_MODE_HPP
#define DTT_MODE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtt {

// The two modes of the theory: discrete and simplicial.
enum class Mode : uint8_t { dm, sm };

// The seven modalities (1-cells) of the mode 2-category.
enum class Mod : uint8_t { IdDm, IdSm, Tri, Dia, Box, TriDia, TriBox };

inline const char* mode_name(Mode m) { return m == Mode::dm ? "dm" : "sm"; }

inline Mode mod_dom(Mod m) {
  switch (m) {
    case Mod::IdDm: case Mod::Tri: return Mode::dm;
    default: return Mode::sm;
  }
}

inline Mode mod_cod(Mod m) {
  switch (m) {
    case Mod::IdDm: case Mod::Dia: case Mod::Box: return Mode::dm;
    default: return Mode::sm;
  }
}

inline Mod mode_identity(Mode m) { return m == Mode::dm ? Mod::IdDm : Mod::IdSm; }

inline bool is_identity(Mod m) { return m == Mod::IdDm || m == Mod::IdSm; }

struct ModeError : std::runtime_error {
  explicit ModeError(const std::string& what) : std::runtime_error(what) {}
};

inline const char* mod_name(Mod m) {
  switch (m) {
    case Mod::IdDm: return "1_dm";
    case Mod::IdSm: return "1_sm";
    case Mod::Tri: return "△";        // triangle
    case Mod::Dia: return "◇";        // diamond
    case Mod::Box: return "□";        // box
    case Mod::TriDia: return "△◇";
    case Mod::TriBox: return "△□";
  }
  return "?";
}

inline const char* mod_name_ascii(Mod m) {
  switch (m) {
    case Mod::IdDm: return "1_dm";
    case Mod::IdSm: return "1_sm";
    case Mod::Tri: return "T";
    case Mod::Dia: return "D";
    case Mod::Box: return "B";
    case Mod::TriDia: return "TD";
    case Mod::TriBox: return "TB";
  }
  return "?";
}

inline const std::array<Mod, 7>& all_mods() {
  static const std::array<Mod, 7> mods = {Mod::IdDm, Mod::IdSm, Mod::Tri,
                                          Mod::Dia,  Mod::Box,  Mod::TriDia,
                                          Mod::TriBox};
  return mods;
}

namespace detail {
// Composition table for the ten non-identity composable pairs.
inline std::optional<Mod> compose_table(Mod nu, Mod rho) {
  switch (rho) {
    case Mod::Tri:
      switch (nu) {
        case Mod::Dia: case Mod::Box: return Mod::IdDm;
        case Mod::TriDia: case Mod::TriBox: return Mod::Tri;
        default: return std::nullopt;
      }
    case Mod::TriDia:
      switch (nu) {
        case Mod::Dia: case Mod::Box: return Mod::Dia;
        case Mod::TriDia: case Mod::TriBox: return Mod::TriDia;
        default: return std::nullopt;
      }
    case Mod::TriBox:
      switch (nu) {
        case Mod::Dia: case Mod::Box: return Mod::Box;
        case Mod::TriDia: case Mod::TriBox: return Mod::TriBox;
        default: return std::nullopt;
      }
    case Mod::Dia:
      if (nu == Mod::Tri) return Mod::TriDia;
      return std::nullopt;
    case Mod::Box:
      if (nu == Mod::Tri) return Mod::TriBox;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}
}  // namespace detail

// nu . rho (rho applied first); defined when dom(nu) = cod(rho).
inline Mod compose(Mod nu, Mod rho) {
  if (mod_dom(nu) != mod_cod(rho))
    throw ModeError(std::string("mode-mismatch: cannot compose ") + mod_name_ascii(nu) +
                    " after " + mod_name_ascii(rho));
  if (is_identity(rho)) return nu;
  if (is_identity(nu)) return rho;
  auto r = detail::compose_table(nu, rho);
  if (!r) throw ModeError("mode-mismatch: composition table has no entry");
  return *r;
}

inline bool parallel(Mod a, Mod b) {
  return mod_dom(a) == mod_dom(b) && mod_cod(a) == mod_cod(b);
}

// Hom-poset order. Nontrivial pairs: Box <= Dia, TriBox <= 1_sm <= TriDia.
inline bool leq(Mod mu, Mod nu) {
  if (!parallel(mu, nu))
    throw ModeError(std::string("mode-mismatch: ") + mod_name_ascii(mu) + " and " +
                    mod_name_ascii(nu) + " are not parallel");
  if (mu == nu) return true;
  if (mu == Mod::Box && nu == Mod::Dia) return true;
  if (mu == Mod::TriBox && (nu == Mod::IdSm || nu == Mod::TriDia)) return true;
  if (mu == Mod::IdSm && nu == Mod::TriDia) return true;
  return false;
}

// Non-throwing variant: false when the arrows are not even parallel.
inline bool leq_opt(Mod mu, Mod nu) {
  return parallel(mu, nu) && leq(mu, nu);
}

// The hazardous modalities are exactly those of the form rho . Dia.
inline bool is_hazardous(Mod mu) { return mu == Mod::Dia || mu == Mod::TriDia; }

inline bool is_safe(Mod mu) { return !is_hazardous(mu); }

// The partner on the right of the adjunction chain Dia -| Tri -| Box,
// TriDia -| TriBox, 1 -| 1. Absent for Box and TriBox, which sit at the
// end of their chains.
inline std::optional<Mod> right_adjoint(Mod mu) {
  switch (mu) {
    case Mod::IdDm: return Mod::IdDm;
    case Mod::IdSm: return Mod::IdSm;
    case Mod::Dia: return Mod::Tri;
    case Mod::Tri: return Mod::Box;
    case Mod::TriDia: return Mod::TriBox;
    default: return std::nullopt;
  }
}

// Left adjoint where one exists; a modality is safe iff it has one
// (semantically, iff its lock is reified by a modality).
inline std::optional<Mod> left_adjoint(Mod mu) {
  switch (mu) {
    case Mod::IdDm: return Mod::IdDm;
    case Mod::IdSm: return Mod::IdSm;
    case Mod::Tri: return Mod::Dia;
    case Mod::Box: return Mod::Tri;
    case Mod::TriBox: return Mod::TriDia;
    default: return std::nullopt;
  }
}

// Is mu of the form Tri . nu?  Every nontrivially modal telescope entry at
// mode sm has this shape; returns nu.
inline std::optional<Mod> split_tri(Mod mu) {
  switch (mu) {
    case Mod::Tri: return Mod::IdDm;
    case Mod::TriDia: return Mod::Dia;
    case Mod::TriBox: return Mod::Box;
    default: return std::nullopt;
  }
}

}  // namespace dtt

#endif  // DTT_MODE_HPP
