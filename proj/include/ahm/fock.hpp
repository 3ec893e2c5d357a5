#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ahm {

using cplx = std::complex<double>;
using Word = std::uint64_t;
using SparseMatrix = Eigen::SparseMatrix<cplx>;  // column-major

enum class Spin { Up, Down };

/// Mode ordering: up spins occupy modes 0..L-1, down spins L..2L-1.
inline int mode_index(int site, Spin s, int num_sites) {
  return s == Spin::Up ? site : num_sites + site;
}

struct Sector {
  int n_up;
  int n_down;
  friend auto operator<=>(const Sector&, const Sector&) = default;
};

/// Which (N_up, N_down) sectors a basis contains.
struct Restriction {
  enum class Kind { Full, Even, EE, OO, EO, OE, Fixed, ParticleNumber, SzTower };
  Kind kind = Kind::Full;
  int a = 0;  // N_up for Fixed, N for ParticleNumber, N_up - N_down for SzTower
  int b = 0;  // N_down for Fixed

  static Restriction full() { return {Kind::Full}; }
  /// (e,e) and (o,o): even total particle number with equal spin parities.
  static Restriction even() { return {Kind::Even}; }
  static Restriction ee() { return {Kind::EE}; }
  static Restriction oo() { return {Kind::OO}; }
  static Restriction eo() { return {Kind::EO}; }
  static Restriction oe() { return {Kind::OE}; }
  static Restriction fixed(int n_up, int n_down) { return {Kind::Fixed, n_up, n_down}; }
  static Restriction particle_number(int n) { return {Kind::ParticleNumber, n}; }
  static Restriction sz_tower(int up_minus_down) { return {Kind::SzTower, up_minus_down}; }

  bool contains(Sector s) const;
  std::string label() const;
};

/// Ordered occupation-number basis over a set of sectors. Sectors appear in
/// ascending (N_up, N_down) order; inside a sector the configurations are
/// ascending as unsigned occupation words.
class Basis {
 public:
  static std::shared_ptr<const Basis> make(int num_sites, std::vector<Sector> sectors);
  static std::shared_ptr<const Basis> sector(int num_sites, int n_up, int n_down);
  static std::shared_ptr<const Basis> restricted(int num_sites, Restriction r);

  int num_sites() const { return num_sites_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(configs_.size()); }
  const std::vector<Word>& configs() const { return configs_; }
  Word config(Eigen::Index i) const { return configs_[static_cast<std::size_t>(i)]; }

  const std::vector<Sector>& sectors() const { return sectors_; }
  /// Start of block k; block_offset(sectors().size()) == dim().
  Eigen::Index block_offset(std::size_t k) const { return offsets_[k]; }
  Eigen::Index block_size(std::size_t k) const { return offsets_[k + 1] - offsets_[k]; }
  std::optional<std::size_t> block_of(Sector s) const;
  Sector sector_of(Word w) const;

  std::optional<Eigen::Index> index_of(Word w) const;
  bool same_as(const Basis& other) const;

 private:
  int num_sites_ = 0;
  std::vector<Sector> sectors_;
  std::vector<Eigen::Index> offsets_;
  std::vector<Word> configs_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Number of configurations C(L, n_up) * C(L, n_down).
Eigen::Index sector_dimension(int num_sites, int n_up, int n_down);

// ---------------------------------------------------------------------------
// Second-quantized expressions: sums of c-number times ladder-operator words.

struct Ladder {
  int mode;
  bool dagger;
};

struct Term {
  cplx coef;
  std::vector<Ladder> ops;  // written left to right, acts right to left
};

class Expr {
 public:
  Expr() = default;
  explicit Expr(cplx scalar) { if (scalar != cplx{}) terms_.push_back({scalar, {}}); }
  static Expr ladder(int mode, bool dagger) { Expr e; e.terms_.push_back({1.0, {{mode, dagger}}}); return e; }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(cplx s);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(Expr a, cplx s) { return a *= s; }
  friend Expr operator*(cplx s, Expr a) { return a *= s; }
  friend Expr operator-(Expr a) { return a *= -1.0; }
  friend Expr operator*(const Expr& a, const Expr& b);

  Expr adjoint() const;

 private:
  std::vector<Term> terms_;
};

Expr cdag(int site, Spin s, int num_sites);
Expr cann(int site, Spin s, int num_sites);
Expr number(int site, Spin s, int num_sites);
inline Expr identity_expr() { return Expr(cplx{1.0}); }

/// Apply a ladder word to a configuration; returns the fermionic sign or 0.
/// The sign of c_m^dagger / c_m is (-1)^(occupied modes below m).
int apply_word(const std::vector<Ladder>& ops, Word& w);

// ---------------------------------------------------------------------------

/// Complex sparse matrix between two bases.
class SparseOperator {
 public:
  SparseOperator(BasisPtr domain, BasisPtr codomain, SparseMatrix m);

  const BasisPtr& domain() const { return domain_; }
  const BasisPtr& codomain() const { return codomain_; }
  const SparseMatrix& matrix() const { return m_; }
  /// True when the codomain is empty (e.g. creation in a full sector).
  bool is_empty() const { return codomain_->dim() == 0 || domain_->dim() == 0; }
  bool is_square() const { return domain_->same_as(*codomain_); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  SparseOperator adjoint() const;
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(m_); }
  /// Largest |imaginary part| over the stored entries.
  double max_imag() const;

  SparseOperator& operator+=(const SparseOperator& o);
  SparseOperator& operator-=(const SparseOperator& o);
  SparseOperator& operator*=(cplx s);
  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(SparseOperator a, cplx s) { return a *= s; }
  friend SparseOperator operator*(cplx s, SparseOperator a) { return a *= s; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

 private:
  BasisPtr domain_;
  BasisPtr codomain_;
  SparseMatrix m_;
};

SparseOperator identity(const BasisPtr& basis);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

/// Entrywise max |a - b|; throws BasisMismatch if the shapes differ.
double max_abs_diff(const SparseOperator& a, const SparseOperator& b);
double max_abs(const SparseOperator& a);
bool is_hermitian(const SparseOperator& a, double tol);

/// Matrix of an expression on `domain`. The codomain is `domain` itself
/// when every target sector is already present, otherwise the basis of the
/// target sectors. With an explicit codomain, leaving it throws ClosureError.
SparseOperator to_operator(const Expr& e, const BasisPtr& domain);
SparseOperator to_operator(const Expr& e, const BasisPtr& domain, const BasisPtr& codomain);
/// Codomain projection of the expression: components leaving `codomain` are
/// dropped instead of raising.
SparseOperator to_operator_projected(const Expr& e, const BasisPtr& domain, const BasisPtr& codomain);

SparseOperator creation(int site, Spin s, const BasisPtr& domain);
SparseOperator annihilation(int site, Spin s, const BasisPtr& domain);
SparseOperator number_op(int site, Spin s, const BasisPtr& domain);

/// Amplitudes over a basis.
struct StateVector {
  BasisPtr basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// <a, op b>; throws BasisMismatch on incompatible bases.
cplx inner(const StateVector& a, const SparseOperator& op, const StateVector& b);

}  // namespace ahm
