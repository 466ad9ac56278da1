#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/gfp.hpp"

namespace hecke {

// Finite group given by its multiplication table; element 0 is the identity.
// A direct product keeps its factors and multiplies componentwise (index = i * |B| + j).
class FiniteGroup {
 public:
  FiniteGroup(std::vector<int> table, int order, std::string label);
  static std::shared_ptr<const FiniteGroup> product(std::shared_ptr<const FiniteGroup> a,
                                                    std::shared_ptr<const FiniteGroup> b);
  static std::shared_ptr<const FiniteGroup> cyclic(int n);
  static std::shared_ptr<const FiniteGroup> symmetric3();

  int order() const { return order_; }
  int mul(int a, int b) const;
  int inv(int a) const;
  const std::vector<int>& generators() const { return generators_; }
  const std::string& label() const { return label_; }
  bool is_product() const { return static_cast<bool>(left_); }
  const FiniteGroup& left() const { return *left_; }
  const FiniteGroup& right() const { return *right_; }
  int pair(int a, int b) const { return a * right_->order() + b; }

 private:
  FiniteGroup() = default;
  void find_generators();
  int order_ = 0;
  std::vector<int> table_, inv_;
  std::vector<int> generators_;
  std::string label_;
  std::shared_ptr<const FiniteGroup> left_, right_;
};

// GL_k(F_q) with its elements enumerated.
class GLGroup {
 public:
  GLGroup(std::shared_ptr<const GaloisField> field, int k);

  int k() const { return k_; }
  const GaloisField& field() const { return *field_; }
  std::shared_ptr<const GaloisField> field_ptr() const { return field_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const FqMatrix& element(int i) const { return elements_[i]; }
  int index_of(const FqMatrix& m) const;
  std::shared_ptr<const FiniteGroup> group() const { return group_; }
  int negate(int i) const { return neg_[i]; }

 private:
  std::shared_ptr<const GaloisField> field_;
  int k_;
  std::vector<FqMatrix> elements_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<int> neg_;
  std::shared_ptr<const FiniteGroup> group_;
};

std::shared_ptr<const GLGroup> gl_group(std::uint32_t q, int k);

// Group representation over F_ell: one matrix per group element.
struct Representation {
  std::shared_ptr<const FiniteGroup> group;
  std::uint32_t ell = 2;
  int dim = 0;
  std::vector<FpMatrix> mats;
  std::vector<int> blocks;  // dims of direct summands, for block-wise Hom computations
  std::string label;

  const FpMatrix& operator()(int g) const { return mats[g]; }
  // Images of the group generators.
  std::vector<FpMatrix> generator_images() const;
};

Representation from_generators(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell,
                               const std::vector<FpMatrix>& gens, std::string label);
Representation regular_representation(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell);
Representation trivial_representation(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell);
Representation direct_sum(const Representation& a, const Representation& b);
Representation dual(const Representation& a);
// Representation of group(a) x group(b).
Representation outer_tensor(const Representation& a, const Representation& b);
// True when every pair of elements multiplies correctly.
bool is_homomorphism(const Representation& r);

// F_ell-valued characters of F_q^x; index 0 is trivial.
int character_count(std::uint32_t q, std::uint32_t ell);
Representation character(std::shared_ptr<const GLGroup> gl1, std::uint32_t ell, int index);

// Homomorphisms X with X a(g) = b(g) X, one basis matrix per entry.
std::vector<FpMatrix> hom_space(const std::vector<FpMatrix>& a_gens, const std::vector<FpMatrix>& b_gens,
                                std::uint32_t ell);
bool is_isomorphic(const Representation& a, const Representation& b, std::mt19937_64& rng);

// Module given by generator images only, for submodule computations.
struct GenModule {
  std::uint32_t ell = 2;
  int dim = 0;
  std::vector<FpMatrix> gens;
};

// Basis (columns, echelonised) of the submodule spanned by the columns of v.
FpMatrix spin(const GenModule& m, const FpMatrix& v);
// A proper nonzero submodule, or nullopt when the module is irreducible.
std::optional<FpMatrix> proper_submodule(const GenModule& m, std::mt19937_64& rng);
// Composition factors of m (with repetition).
std::vector<GenModule> composition_factors(const GenModule& m, std::mt19937_64& rng);

struct IrreducibleInfo {
  Representation rep;
  bool absolutely_irreducible = true;
  int multiplicity_in_regular = 0;
};
// Irreducible representations up to isomorphism, from the regular module.
std::vector<IrreducibleInfo> irreducibles(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell,
                                          std::uint64_t seed = 1);

// Projective cover of an absolutely irreducible representation, via a primitive idempotent of F_ell[G].
Representation projective_cover(const Representation& simple, std::uint64_t seed = 1);

// Cuspidal: no nonzero coinvariants for the upper unipotent radical (k = 2), always true for k = 1.
bool is_cuspidal(const GLGroup& gl, const Representation& r);
// Cuspidal absolutely irreducible representations of GL_k(F_q) over F_ell.
std::vector<Representation> cuspidal_irreducibles(std::shared_ptr<const GLGroup> gl, std::uint32_t ell,
                                                  std::uint64_t seed = 1);

// Selector for the coefficient representation V of M = GL_k x GL_k.
struct VSelector {
  enum class Kind { Character, ProjectivePair, Explicit } kind = Kind::Character;
  // Character: rho0 (x) rho0 for the index-th cuspidal irreducible (k = 1: the index-th character).
  // ProjectivePair: P (+) P^* with P = P(rho0) (x) P(rho0).
  int index = 0;
  std::optional<Representation> explicit_rep;
};

struct CoefficientSystem {
  std::uint32_t ell = 2;
  std::uint32_t q = 2;
  int k = 1;
  std::shared_ptr<const GLGroup> gl;
  std::shared_ptr<const FiniteGroup> levi;  // M = GL_k x GL_k
  Representation V;
  FpMatrix tstar;
  std::vector<FpMatrix> basis1, basisw;
  Fp tau;
  std::string label;

  int dim() const { return V.dim; }
  const std::vector<FpMatrix>& basis(int grade) const { return grade == 0 ? basis1 : basisw; }
  // Coordinates of f in basis(grade); throws ParityViolation if f is outside the span.
  FpVector coordinates(const FpMatrix& f, int grade) const;
  bool in_space(const FpMatrix& f, int grade) const;
  FpMatrix combine(const FpVector& c, int grade) const;
  FpMatrix random_element(int grade, std::mt19937_64& rng) const;
  // sigma(a, d) for a, d in GL_k(F_q) given by index.
  const FpMatrix& sigma(int a, int d) const { return V.mats[levi->pair(a, d)]; }
};

CoefficientSystem make_coefficient_system(std::uint32_t ell, std::uint32_t q, int k, const VSelector& sel);
// Same as above with V given directly as a representation of GL_k x GL_k.
CoefficientSystem make_coefficient_system(std::uint32_t ell, std::shared_ptr<const GLGroup> gl,
                                          Representation V);

// I_1 = End_M(V) and I_w = {X : X sigma(m) = sigma(w m w^-1) X}.
std::vector<FpMatrix> intertwiner_basis(const Representation& V, bool twisted);

// Group algebra F_ell[M] element for M = GL_k x GL_k, sparse.
using GroupAlgebraElement = std::unordered_map<int, std::uint32_t>;
GroupAlgebraElement tstar_group_algebra(const GLGroup& gl, std::uint32_t ell);
// (T*)^2 computed by the double sum over GL_k(F_q)^2.
GroupAlgebraElement tstar_square(const GLGroup& gl, std::uint32_t ell);

}  // namespace hecke
