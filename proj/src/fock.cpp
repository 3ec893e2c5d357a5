#include "ahm/fock.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "ahm/errors.hpp"

namespace ahm {

namespace {

Eigen::Index binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Eigen::Index r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All words of `bits` bits with `k` ones, ascending (Gosper's hack).
std::vector<Word> combinations(int bits, int k) {
  std::vector<Word> out;
  if (k == 0) return {0};
  const Word limit = Word{1} << bits;
  Word w = (Word{1} << k) - 1;
  while (w < limit) {
    out.push_back(w);
    const Word c = w & (~w + 1);
    const Word r = w + c;
    w = (((r ^ w) >> 2) / c) | r;
  }
  return out;
}

bool is_even(int n) { return n % 2 == 0; }

}  // namespace

bool Restriction::contains(Sector s) const {
  switch (kind) {
    case Kind::Full: return true;
    case Kind::Even: return is_even(s.n_up) == is_even(s.n_down);
    case Kind::EE: return is_even(s.n_up) && is_even(s.n_down);
    case Kind::OO: return !is_even(s.n_up) && !is_even(s.n_down);
    case Kind::EO: return is_even(s.n_up) && !is_even(s.n_down);
    case Kind::OE: return !is_even(s.n_up) && is_even(s.n_down);
    case Kind::Fixed: return s.n_up == a && s.n_down == b;
    case Kind::ParticleNumber: return s.n_up + s.n_down == a;
    case Kind::SzTower: return s.n_up - s.n_down == a;
  }
  return false;
}

std::string Restriction::label() const {
  switch (kind) {
    case Kind::Full: return "full";
    case Kind::Even: return "even";
    case Kind::EE: return "ee";
    case Kind::OO: return "oo";
    case Kind::EO: return "eo";
    case Kind::OE: return "oe";
    case Kind::Fixed: return "fixed(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::ParticleNumber: return "N=" + std::to_string(a);
    case Kind::SzTower: return "sz_tower(" + std::to_string(a) + ")";
  }
  return "?";
}

Eigen::Index sector_dimension(int num_sites, int n_up, int n_down) {
  return binomial(num_sites, n_up) * binomial(num_sites, n_down);
}

BasisPtr Basis::make(int num_sites, std::vector<Sector> sectors) {
  if (num_sites < 1 || 2 * num_sites > 62) throw ConfigError("unsupported lattice size for the Fock basis");
  std::sort(sectors.begin(), sectors.end());
  sectors.erase(std::unique(sectors.begin(), sectors.end()), sectors.end());
  auto b = std::make_shared<Basis>();
  b->num_sites_ = num_sites;
  b->offsets_.push_back(0);
  for (const auto& s : sectors) {
    if (s.n_up < 0 || s.n_down < 0 || s.n_up > num_sites || s.n_down > num_sites)
      throw ConfigError("sector (" + std::to_string(s.n_up) + "," + std::to_string(s.n_down) +
                        ") out of range for " + std::to_string(num_sites) + " sites");
    const auto ups = combinations(num_sites, s.n_up);
    const auto downs = combinations(num_sites, s.n_down);
    for (Word d : downs)
      for (Word u : ups) b->configs_.push_back(u | (d << num_sites));
    b->offsets_.push_back(static_cast<Eigen::Index>(b->configs_.size()));
  }
  b->sectors_ = std::move(sectors);
  return b;
}

BasisPtr Basis::sector(int num_sites, int n_up, int n_down) {
  return make(num_sites, {{n_up, n_down}});
}

BasisPtr Basis::restricted(int num_sites, Restriction r) {
  std::vector<Sector> sectors;
  for (int u = 0; u <= num_sites; ++u)
    for (int d = 0; d <= num_sites; ++d)
      if (r.contains({u, d})) sectors.push_back({u, d});
  return make(num_sites, std::move(sectors));
}

std::optional<std::size_t> Basis::block_of(Sector s) const {
  const auto it = std::lower_bound(sectors_.begin(), sectors_.end(), s);
  if (it == sectors_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - sectors_.begin());
}

Sector Basis::sector_of(Word w) const {
  const Word mask = (Word{1} << num_sites_) - 1;
  return {std::popcount(w & mask), std::popcount(w >> num_sites_)};
}

std::optional<Eigen::Index> Basis::index_of(Word w) const {
  const auto block = block_of(sector_of(w));
  if (!block) return std::nullopt;
  const auto first = configs_.begin() + offsets_[*block];
  const auto last = configs_.begin() + offsets_[*block + 1];
  const auto it = std::lower_bound(first, last, w);
  if (it == last || *it != w) return std::nullopt;
  return static_cast<Eigen::Index>(it - configs_.begin());
}

bool Basis::same_as(const Basis& other) const {
  return this == &other || (num_sites_ == other.num_sites_ && sectors_ == other.sectors_);
}

// ---------------------------------------------------------------------------

Expr& Expr::operator+=(const Expr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (auto t : o.terms_) {
    t.coef = -t.coef;
    terms_.push_back(std::move(t));
  }
  return *this;
}

Expr& Expr::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= s;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Term t{ta.coef * tb.coef, ta.ops};
      t.ops.insert(t.ops.end(), tb.ops.begin(), tb.ops.end());
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

Expr Expr::adjoint() const {
  Expr out;
  for (const auto& t : terms_) {
    Term r{std::conj(t.coef), {}};
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) r.ops.push_back({it->mode, !it->dagger});
    out.terms_.push_back(std::move(r));
  }
  return out;
}

Expr cdag(int site, Spin s, int num_sites) { return Expr::ladder(mode_index(site, s, num_sites), true); }
Expr cann(int site, Spin s, int num_sites) { return Expr::ladder(mode_index(site, s, num_sites), false); }
Expr number(int site, Spin s, int num_sites) { return cdag(site, s, num_sites) * cann(site, s, num_sites); }

int apply_word(const std::vector<Ladder>& ops, Word& w) {
  int sign = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const Word bit = Word{1} << it->mode;
    const bool occupied = (w & bit) != 0;
    if (occupied == it->dagger) return 0;
    if (std::popcount(w & (bit - 1)) % 2 != 0) sign = -sign;
    w ^= bit;
  }
  return sign;
}

// ---------------------------------------------------------------------------

SparseOperator::SparseOperator(BasisPtr domain, BasisPtr codomain, SparseMatrix m)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), m_(std::move(m)) {
  if (m_.rows() != codomain_->dim() || m_.cols() != domain_->dim())
    throw BasisMismatch("matrix shape does not match its bases");
  m_.makeCompressed();
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != domain_->dim()) throw BasisMismatch("vector length does not match operator domain");
  return m_ * v;
}

SparseOperator SparseOperator::adjoint() const {
  return SparseOperator(codomain_, domain_, SparseMatrix(m_.adjoint()));
}

double SparseOperator::max_imag() const {
  double m = 0.0;
  for (Eigen::Index k = 0; k < m_.nonZeros(); ++k) m = std::max(m, std::abs(m_.valuePtr()[k].imag()));
  return m;
}

namespace {
void require_same_shape(const SparseOperator& a, const SparseOperator& b) {
  if (!a.domain()->same_as(*b.domain()) || !a.codomain()->same_as(*b.codomain()))
    throw BasisMismatch("operators act between different bases");
}
}  // namespace

SparseOperator& SparseOperator::operator+=(const SparseOperator& o) {
  require_same_shape(*this, o);
  m_ += o.m_;
  m_.prune(cplx{0.0});
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& o) {
  require_same_shape(*this, o);
  m_ -= o.m_;
  m_.prune(cplx{0.0});
  return *this;
}

SparseOperator& SparseOperator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  if (!b.codomain()->same_as(*a.domain()))
    throw BasisMismatch("product: codomain of the right factor is not the domain of the left");
  SparseMatrix m = (a.matrix() * b.matrix()).pruned();
  return SparseOperator(b.domain(), a.codomain(), std::move(m));
}

SparseOperator identity(const BasisPtr& basis) {
  SparseMatrix m(basis->dim(), basis->dim());
  m.setIdentity();
  return SparseOperator(basis, basis, std::move(m));
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) { return a * b - b * a; }

SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) { return a * b + b * a; }

double max_abs(const SparseOperator& a) {
  double m = 0.0;
  const auto& mat = a.matrix();
  for (Eigen::Index k = 0; k < mat.nonZeros(); ++k) m = std::max(m, std::abs(mat.valuePtr()[k]));
  return m;
}

double max_abs_diff(const SparseOperator& a, const SparseOperator& b) { return max_abs(a - b); }

bool is_hermitian(const SparseOperator& a, double tol) {
  return a.is_square() && max_abs_diff(a, a.adjoint()) <= tol;
}

namespace {

Sector charge(const Term& t, int num_sites) {
  Sector q{0, 0};
  for (const auto& op : t.ops) {
    const int d = op.dagger ? 1 : -1;
    (op.mode < num_sites ? q.n_up : q.n_down) += d;
  }
  return q;
}

SparseOperator assemble(const Expr& e, const BasisPtr& domain, const BasisPtr& codomain, bool strict) {
  std::vector<Eigen::Triplet<cplx>> triplets;
  for (Eigen::Index col = 0; col < domain->dim(); ++col) {
    for (const auto& t : e.terms()) {
      Word w = domain->config(col);
      const int sign = apply_word(t.ops, w);
      if (sign == 0) continue;
      const auto row = codomain->index_of(w);
      if (!row) {
        if (strict)
          throw ClosureError("operator leaves the requested basis (sector " +
                             std::to_string(codomain->sector_of(w).n_up) + "," +
                             std::to_string(codomain->sector_of(w).n_down) + ")");
        continue;
      }
      triplets.emplace_back(*row, col, t.coef * static_cast<double>(sign));
    }
  }
  SparseMatrix m(codomain->dim(), domain->dim());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0});
  return SparseOperator(domain, codomain, std::move(m));
}

}  // namespace

SparseOperator to_operator(const Expr& e, const BasisPtr& domain) {
  const int n = domain->num_sites();
  std::set<Sector> charges;
  for (const auto& t : e.terms()) charges.insert(charge(t, n));
  std::vector<Sector> targets;
  bool closed = true;
  for (const auto& s : domain->sectors()) {
    for (const auto& q : charges) {
      const Sector t{s.n_up + q.n_up, s.n_down + q.n_down};
      if (t.n_up < 0 || t.n_down < 0 || t.n_up > n || t.n_down > n) continue;
      targets.push_back(t);
      if (!domain->block_of(t)) closed = false;
    }
  }
  if (targets.empty() && domain->dim() > 0) closed = false;
  const BasisPtr codomain = closed ? domain : Basis::make(n, std::move(targets));
  return assemble(e, domain, codomain, false);
}

SparseOperator to_operator(const Expr& e, const BasisPtr& domain, const BasisPtr& codomain) {
  return assemble(e, domain, codomain, true);
}

SparseOperator to_operator_projected(const Expr& e, const BasisPtr& domain, const BasisPtr& codomain) {
  return assemble(e, domain, codomain, false);
}

SparseOperator creation(int site, Spin s, const BasisPtr& domain) {
  return to_operator(cdag(site, s, domain->num_sites()), domain);
}

SparseOperator annihilation(int site, Spin s, const BasisPtr& domain) {
  return to_operator(cann(site, s, domain->num_sites()), domain);
}

SparseOperator number_op(int site, Spin s, const BasisPtr& domain) {
  return to_operator(number(site, s, domain->num_sites()), domain);
}

cplx inner(const StateVector& a, const SparseOperator& op, const StateVector& b) {
  if (!a.basis->same_as(*op.codomain()) || !b.basis->same_as(*op.domain()))
    throw BasisMismatch("state bases do not match the operator");
  return a.amplitudes.dot(op.apply(b.amplitudes));
}

}  // namespace ahm
