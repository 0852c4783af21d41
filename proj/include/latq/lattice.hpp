#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latq/ring.hpp"

// Generator matrices and coset decompositions of the generalized
// checkerboard lattice families, their realization as real lattices through
// the complex-to-real transform, and exact volume/basis validation.

namespace latq {

enum class Family { EM, EM2P, EM1WP, GM, GM2P, GM1IP, K2M, ZN, DN };

constexpr bool is_complex_family(Family f) {
  return f != Family::ZN && f != Family::DN;
}
constexpr bool is_eisenstein_family(Family f) {
  return f == Family::EM || f == Family::EM2P || f == Family::EM1WP ||
         f == Family::K2M;
}
// Number of base-lattice cosets whose union forms the family.
constexpr int coset_count(Family f) {
  switch (f) {
    case Family::EM2P:
    case Family::GM2P: return 4;
    case Family::EM1WP:
    case Family::K2M: return 3;
    case Family::GM1IP: return 2;
    default: return 1;
  }
}

std::string_view family_tag(Family f);

// The universal handle every operation dispatches on: family + complex
// dimension m (real dimension for ZN/DN), with an optional product
// extension appending one real coordinate on a*Z.
struct Descriptor {
  Family family = Family::ZN;
  int m = 1;
  std::optional<double> product_a;

  int base_real_dim() const { return is_complex_family(family) ? 2 * m : m; }
  int real_dim() const { return base_real_dim() + (product_a ? 1 : 0); }

  // Throws std::invalid_argument when m or the extension is out of range.
  void validate() const;
};

using ComplexVector = std::vector<Complex>;

// Column-generator complex matrix over Z[w] or Z[i].
struct ComplexBasis {
  bool eisenstein = true;
  int m = 1;
  Eigen::MatrixXcd cols;
};

// Column-generator real matrix; Gram = B^T B.
using RealBasis = Eigen::MatrixXd;

struct CosetDecomposition {
  Family base = Family::EM;  // EM or GM
  int m = 1;
  std::vector<ComplexVector> shifts;  // first shift is always the zero vector
};

// Generator matrix of the family's full lattice (for the coset families the
// first column is the replaced coset generator). ZN/DN/K2M are rejected:
// the first two are real-native, and the K-type union is not a ring module
// for every m, so it is realized directly as a real lattice.
ComplexBasis build_complex_basis(Family f, int m);

// Exact Z[w] entries of the E_m basis, column-major.
std::vector<Eisenstein> em_basis_exact(int m);

// Shift vectors of the family as a union of base-lattice cosets.
CosetDecomposition coset_shifts(Family f, int m);

// Interleave a complex vector into (real parts..., imaginary parts...).
Eigen::VectorXd psi(const ComplexVector& v);

// Real column basis of the realized lattice, n x n with n = real_dim().
RealBasis realize(const Descriptor& d);

// |det(realize(d))|.
double volume(const Descriptor& d);

// Checks the two basis conditions of E_m: every column sum lies in the
// ideal (1+w)Z[w], and |det|^2 = 3. The determinant is evaluated exactly
// (fraction-free elimination over Z[w]) for m <= 8, in floating point
// beyond.
bool validate_em_basis(const std::vector<Eisenstein>& cols_major, int m);
// Same check for a floating candidate; entries that are not Eisenstein
// integers (to 1e-9) are rejected.
bool validate_em_basis(const ComplexBasis& candidate);

// Exact determinant of an m x m Eisenstein matrix (column-major), m <= 8.
Eisenstein eisenstein_determinant(const std::vector<Eisenstein>& cols_major, int m);

// Appends the a*Z coordinate that is NSM-optimal for the given base value:
// a = sqrt(12 G) * Vol^(1/n).
Descriptor product_extend(const Descriptor& base, double nsm_of_base);

// Lattice naming grammar: E{m}, E{m}2+, E{m}1w+, G{m}, G{m}2+, G{m}1i+,
// K{2m}, Z{n}, D{n}, each with an optional xZ suffix for the product
// extension; an underscore before the coset tag is accepted (E7_2+).
struct ParsedName {
  Descriptor base;      // without the product coordinate
  bool product = false; // xZ suffix present
};
std::optional<ParsedName> parse_lattice_name(std::string_view name);
std::string lattice_name(const Descriptor& d);

// Reference generator matrices used by the equivalence reports: "D4",
// "E8ref" (a known complex E8 basis over Z[i]) and "E6sref" (a known
// complex E6* basis over Z[w]). Returns nothing for other names.
std::optional<RealBasis> reference_basis(std::string_view name);

}  // namespace latq
