#include "prolim/fgab.hpp"

#include <sstream>
#include <stdexcept>

#include "prolim/errors.hpp"
#include "prolim/smith.hpp"

namespace prolim {

namespace {

std::vector<std::size_t> iota(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out;
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(i);
  }
  return out;
}

Matrix first_rows(const Matrix& m, std::size_t count) {
  const auto idx = iota(0, count);
  return m.select_rows(idx);
}

// Order key of a free coordinate: 0, 1, -1, 2, -2, ...
Integer free_key(const Integer& z) { return z > 0 ? Integer(2 * z - 1) : Integer(-2 * z); }

Integer key_to_free(const Integer& key) {
  if (key == 0) return 0;
  return (key % 2 == 1) ? Integer((key + 1) / 2) : Integer(-(key / 2));
}

// Columns of `gens` reduced into the ambient.
Matrix generator_matrix(const FgAbGroup& g, const std::vector<Vector>& gens) {
  return Matrix::from_columns(gens, g.rank());
}

}  // namespace

// ---------------------------------------------------------------- FgAbGroup

FgAbGroup::FgAbGroup(std::size_t free_rank, Vector torsion) : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) {
      throw std::invalid_argument("FgAbGroup: invariant factor below 2");
    }
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0) {
      throw std::invalid_argument("FgAbGroup: invariant factors do not form a divisibility chain");
    }
  }
}

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
  if (order == 0) return free(1);
  if (abs_value(order) == 1) return trivial();
  return {0, {abs_value(order)}};
}

FgAbGroup FgAbGroup::from_moduli(std::size_t free_rank, const Vector& moduli) {
  const std::size_t n = free_rank + moduli.size();
  Matrix rel(n, moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    rel(free_rank + i, i) = moduli[i];
  }
  return present_cokernel(rel).group;
}

std::optional<Integer> FgAbGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Integer o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

Integer FgAbGroup::modulus(std::size_t coordinate) const {
  if (coordinate >= rank()) throw std::out_of_range("FgAbGroup::modulus");
  return coordinate < free_rank_ ? Integer(0) : torsion_[coordinate - free_rank_];
}

Matrix FgAbGroup::relations() const {
  Matrix m(rank(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    m(free_rank_ + i, i) = torsion_[i];
  }
  return m;
}

Vector FgAbGroup::reduce(Vector coords) const {
  if (coords.size() != rank()) {
    throw std::invalid_argument("FgAbGroup::reduce: element has " + std::to_string(coords.size()) +
                                " coordinates, group has rank " + std::to_string(rank()));
  }
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    coords[free_rank_ + i] = mod_floor(coords[free_rank_ + i], torsion_[i]);
  }
  return coords;
}

bool FgAbGroup::is_reduced(const Vector& coords) const {
  if (coords.size() != rank()) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    const Integer& c = coords[free_rank_ + i];
    if (c < 0 || c >= torsion_[i]) return false;
  }
  return true;
}

Vector FgAbGroup::add(const Vector& a, const Vector& b) const {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b.at(i);
  return reduce(std::move(out));
}

Vector FgAbGroup::subtract(const Vector& a, const Vector& b) const {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b.at(i);
  return reduce(std::move(out));
}

Vector FgAbGroup::negate(const Vector& a) const {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return reduce(std::move(out));
}

Vector FgAbGroup::scale(const Integer& k, const Vector& a) const {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
  return reduce(std::move(out));
}

Vector FgAbGroup::basis_vector(std::size_t i) const {
  Vector v(rank());
  v.at(i) = 1;
  return v;
}

std::vector<Vector> FgAbGroup::elements(std::size_t cap) const {
  if (!is_finite()) {
    throw MathError("cannot enumerate the infinite group " + to_string());
  }
  const Integer n = *order();
  if (n > cap) {
    throw MathError("group " + to_string() + " has " + n.str() + " elements, above the enumeration cap " +
                    std::to_string(cap));
  }
  return first_elements(n.convert_to<std::size_t>());
}

std::vector<Vector> FgAbGroup::first_elements(std::size_t count) const {
  std::vector<Vector> out;
  if (count == 0) return out;
  const std::size_t f = free_rank_;
  const std::size_t t = torsion_.size();

  auto emit_torsion = [&](const Vector& free_part) {
    Vector tors(t);
    while (true) {
      Vector v = free_part;
      v.insert(v.end(), tors.begin(), tors.end());
      out.push_back(std::move(v));
      if (out.size() == count) return;
      std::size_t i = t;
      while (i > 0) {
        --i;
        tors[i] += 1;
        if (tors[i] < torsion_[i]) break;
        tors[i] = 0;
        if (i == 0) return;
      }
      if (t == 0) return;
    }
  };

  if (f == 0) {
    emit_torsion({});
    return out;
  }
  for (Integer radius = 0;; ++radius) {
    // Keys lie in [0, 2 radius]; at least one coordinate must sit on the shell.
    const Integer top = 2 * radius;
    Vector keys(f);
    while (true) {
      bool on_shell = radius == 0;
      for (const auto& k : keys) {
        if (k + 1 >= top && k > 0) on_shell = true;
      }
      if (on_shell) {
        Vector free_part(f);
        for (std::size_t i = 0; i < f; ++i) free_part[i] = key_to_free(keys[i]);
        emit_torsion(free_part);
        if (out.size() == count) return out;
      }
      std::size_t i = f;
      bool done = false;
      while (true) {
        if (i == 0) {
          done = true;
          break;
        }
        --i;
        keys[i] += 1;
        if (keys[i] <= top) break;
        keys[i] = 0;
      }
      if (done) break;
    }
  }
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank_ > 0) {
    out << "Z";
    if (free_rank_ > 1) out << "^" << free_rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    out << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return out.str();
}

// ----------------------------------------------------------------- GroupHom

std::optional<std::string> GroupHom::check(const FgAbGroup& source, const FgAbGroup& target, const Matrix& matrix) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) {
    std::ostringstream msg;
    msg << "matrix is " << matrix.rows() << "x" << matrix.cols() << ", expected " << target.rank() << "x"
        << source.rank();
    return msg.str();
  }
  for (std::size_t j = source.free_rank(); j < source.rank(); ++j) {
    const Integer d = source.modulus(j);
    for (std::size_t i = 0; i < target.rank(); ++i) {
      const Integer v = d * matrix(i, j);
      const Integer m = target.modulus(i);
      const bool vanishes = m == 0 ? v == 0 : v % m == 0;
      if (!vanishes) {
        std::ostringstream msg;
        msg << "not well defined: generator " << j << " has order " << d << " but its image does not";
        return msg.str();
      }
    }
  }
  return std::nullopt;
}

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (auto problem = check(source_, target_, matrix_)) {
    throw std::invalid_argument("GroupHom: " + *problem);
  }
  for (std::size_t i = target_.free_rank(); i < target_.rank(); ++i) {
    const Integer m = target_.modulus(i);
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      matrix_(i, j) = mod_floor(matrix_(i, j), m);
    }
  }
}

GroupHom GroupHom::identity(const FgAbGroup& g) { return {g, g, Matrix::identity(g.rank())}; }

GroupHom GroupHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return {source, target, Matrix(target.rank(), source.rank())};
}

Vector GroupHom::apply(const Vector& x) const {
  if (x.size() != source_.rank()) {
    throw std::invalid_argument("GroupHom::apply: element does not belong to the source");
  }
  return target_.reduce(matrix_ * x);
}

GroupHom compose(const GroupHom& after, const GroupHom& before) {
  if (after.source() != before.target()) {
    throw std::invalid_argument("compose: groups do not match");
  }
  return {before.source(), after.target(), after.matrix() * before.matrix()};
}

GroupHom hom_power(const GroupHom& endo, std::size_t exponent) {
  if (endo.source() != endo.target()) {
    throw std::invalid_argument("hom_power: not an endomorphism");
  }
  GroupHom result = GroupHom::identity(endo.source());
  GroupHom base = endo;
  while (exponent > 0) {
    if (exponent & 1U) result = compose(result, base);
    exponent >>= 1U;
    if (exponent > 0) base = compose(base, base);
  }
  return result;
}

// ------------------------------------------------------------- Presentation

Presentation present_cokernel(const Matrix& relations) {
  const std::size_t k = relations.rows();
  const SmithForm s = smith_normal_form(relations);
  std::vector<std::size_t> order;
  for (std::size_t i = s.rank; i < k; ++i) order.push_back(i);
  Vector torsion;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.D(i, i) >= 2) {
      order.push_back(i);
      torsion.push_back(s.D(i, i));
    }
  }
  Presentation p;
  p.group = FgAbGroup(k - s.rank, torsion);
  p.to_normal = s.U.select_rows(order);
  p.from_normal = s.U_inverse.select_columns(order);
  return p;
}

// ----------------------------------------------------------------- Subgroup

struct Subgroup::Cache {
  bool whole = false;
  FgAbGroup normal_form;
  Matrix to_normal;  // generator coefficients -> normal-form coordinates
  GroupHom inclusion;
  SmithForm membership;  // of [generators | ambient relations]
};

Subgroup::Subgroup(FgAbGroup ambient, std::vector<Vector> generators)
    : ambient_(std::move(ambient)),
      once_(std::make_shared<std::once_flag>()),
      cache_(std::make_shared<Cache>()) {
  generators_.reserve(generators.size());
  for (auto& g : generators) {
    Vector r = ambient_.reduce(std::move(g));
    bool zero = true;
    for (const auto& c : r) {
      if (c != 0) {
        zero = false;
        break;
      }
    }
    if (!zero) generators_.push_back(std::move(r));
  }
}

Subgroup Subgroup::whole(const FgAbGroup& g) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(g.basis_vector(i));
  return {g, gens};
}

Subgroup Subgroup::trivial(const FgAbGroup& g) { return {g, {}}; }

const Subgroup::Cache& Subgroup::cache() const {
  std::call_once(*once_, [this] {
    Cache& c = *cache_;
    const std::size_t k = generators_.size();
    const Matrix a = Matrix::hcat(generator_matrix(ambient_, generators_), ambient_.relations());
    c.membership = smith_normal_form(a);
    std::vector<std::size_t> kernel_cols;
    for (std::size_t j = c.membership.rank; j < a.cols(); ++j) kernel_cols.push_back(j);
    const Matrix kernel_k = first_rows(c.membership.V.select_columns(kernel_cols), k);
    const Presentation pres = present_cokernel(kernel_k);

    bool whole = pres.group == ambient_;
    if (whole && !ambient_.is_finite()) {
      for (std::size_t i = 0; i < ambient_.rank() && whole; ++i) {
        whole = solve_integer(c.membership, ambient_.basis_vector(i)).has_value();
      }
    }
    c.whole = whole;
    if (whole) {
      c.normal_form = ambient_;
      c.inclusion = GroupHom::identity(ambient_);
    } else {
      c.normal_form = pres.group;
      c.to_normal = pres.to_normal;
      c.inclusion = GroupHom(pres.group, ambient_, generator_matrix(ambient_, generators_) * pres.from_normal);
    }
  });
  return *cache_;
}

const FgAbGroup& Subgroup::normal_form() const { return cache().normal_form; }

const GroupHom& Subgroup::inclusion() const { return cache().inclusion; }

bool Subgroup::is_whole() const { return cache().whole; }

std::optional<Vector> Subgroup::coordinates_of(const Vector& y) const {
  const Cache& c = cache();
  const Vector target = ambient_.reduce(y);
  if (c.whole) return target;
  auto z = solve_integer(c.membership, target);
  if (!z) return std::nullopt;
  Vector a(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(generators_.size()));
  return c.normal_form.reduce(c.to_normal * a);
}

bool Subgroup::contains(const Vector& y) const {
  const Cache& c = cache();
  if (c.whole) return true;
  return solve_integer(c.membership, ambient_.reduce(y)).has_value();
}

bool subgroup_contains(const Subgroup& a, const Subgroup& b) {
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument("subgroup_contains: subgroups of different groups");
  }
  for (const auto& g : b.generators()) {
    if (!a.contains(g)) return false;
  }
  return true;
}

bool subgroup_equal(const Subgroup& a, const Subgroup& b) {
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument("subgroup_equal: subgroups of different groups");
  }
  return subgroup_contains(a, b) && subgroup_contains(b, a);
}

std::optional<Integer> subgroup_index(const Subgroup& big, const Subgroup& small) {
  if (!subgroup_contains(big, small)) {
    throw std::invalid_argument("subgroup_index: not a subgroup of the larger group");
  }
  std::vector<Vector> coords;
  for (const auto& g : small.generators()) coords.push_back(*big.coordinates_of(g));
  const Subgroup inside(big.normal_form(), coords);
  return quotient(big.normal_form(), inside).group.order();
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument("intersect: subgroups of different groups");
  }
  const FgAbGroup& g = a.ambient();
  const Matrix ga = generator_matrix(g, a.generators());
  const Matrix gb = generator_matrix(g, b.generators());
  const Matrix stacked = Matrix::hcat(Matrix::hcat(ga, gb.scaled(-1)), g.relations());
  const Matrix ker = integer_kernel(stacked);
  const Matrix za = first_rows(ker, a.generators().size());
  return {g, (ga * za).columns()};
}

// ------------------------------------------------------ kernels and images

KernelResult kernel(const GroupHom& h) {
  const Matrix stacked = Matrix::hcat(h.matrix(), h.target().relations());
  const Matrix ker = first_rows(integer_kernel(stacked), h.source().rank());
  Subgroup sub(h.source(), ker.columns());
  GroupHom incl = sub.inclusion();
  return {std::move(sub), std::move(incl)};
}

Subgroup image(const GroupHom& h) { return {h.target(), h.matrix().columns()}; }

bool is_surjective(const GroupHom& h) { return image(h).is_whole(); }

bool is_injective(const GroupHom& h) { return kernel(h).subgroup.is_trivial(); }

Subgroup map_subgroup(const GroupHom& h, const Subgroup& s) {
  if (s.ambient() != h.source()) {
    throw std::invalid_argument("map_subgroup: subgroup is not in the source");
  }
  std::vector<Vector> gens;
  for (const auto& g : s.generators()) gens.push_back(h.apply(g));
  return {h.target(), gens};
}

Subgroup preimage(const GroupHom& h, const Subgroup& s) {
  if (s.ambient() != h.target()) {
    throw std::invalid_argument("preimage: subgroup is not in the target");
  }
  const Matrix gs = generator_matrix(h.target(), s.generators());
  const Matrix stacked = Matrix::hcat(Matrix::hcat(h.matrix(), gs.scaled(-1)), h.target().relations());
  const Matrix ker = first_rows(integer_kernel(stacked), h.source().rank());
  return {h.source(), ker.columns()};
}

std::optional<Vector> solve_preimage(const GroupHom& h, const Vector& y) {
  const Matrix stacked = Matrix::hcat(h.matrix(), h.target().relations());
  auto z = solve_integer(stacked, h.target().reduce(y));
  if (!z) return std::nullopt;
  z->resize(h.source().rank());
  return h.source().reduce(std::move(*z));
}

QuotientResult quotient(const FgAbGroup& ambient, const Subgroup& s) {
  if (s.ambient() != ambient) {
    throw std::invalid_argument("quotient: subgroup is not in the given group");
  }
  const Matrix rel = Matrix::hcat(generator_matrix(ambient, s.generators()), ambient.relations());
  const Presentation pres = present_cokernel(rel);
  return {pres.group, GroupHom(ambient, pres.group, pres.to_normal)};
}

GroupHom restrict_hom(const GroupHom& h, const Subgroup& source_sub, const Subgroup& target_sub) {
  if (source_sub.ambient() != h.source() || target_sub.ambient() != h.target()) {
    throw std::invalid_argument("restrict_hom: subgroups do not match the map");
  }
  const FgAbGroup& src = source_sub.normal_form();
  const GroupHom& incl = source_sub.inclusion();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < src.rank(); ++j) {
    auto c = target_sub.coordinates_of(h.apply(incl.matrix().column(j)));
    if (!c) {
      throw MathError("restrict_hom: image leaves the target subgroup");
    }
    cols.push_back(std::move(*c));
  }
  return {src, target_sub.normal_form(), Matrix::from_columns(cols, target_sub.normal_form().rank())};
}

// --------------------------------------------------------------- DirectSum

std::size_t DirectSum::concatenated_rank() const { return offsets.empty() ? 0 : offsets.back(); }

GroupHom DirectSum::injection(std::size_t i) const {
  const auto cols = iota(offsets.at(i), offsets.at(i + 1));
  return {parts.at(i), group, to_canonical.select_columns(cols)};
}

GroupHom DirectSum::projection(std::size_t i) const {
  const auto rows = iota(offsets.at(i), offsets.at(i + 1));
  return {group, parts.at(i), from_canonical.select_rows(rows)};
}

Vector DirectSum::pack(const std::vector<Vector>& pieces) const {
  if (pieces.size() != parts.size()) {
    throw std::invalid_argument("DirectSum::pack: wrong number of pieces");
  }
  Vector concat;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].size() != parts[i].rank()) {
      throw std::invalid_argument("DirectSum::pack: piece has wrong rank");
    }
    concat.insert(concat.end(), pieces[i].begin(), pieces[i].end());
  }
  return group.reduce(to_canonical * concat);
}

std::vector<Vector> DirectSum::unpack(const Vector& x) const {
  const Vector concat = from_canonical * x;
  std::vector<Vector> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Vector piece(concat.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                 concat.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
    out.push_back(parts[i].reduce(std::move(piece)));
  }
  return out;
}

DirectSum direct_sum(std::vector<FgAbGroup> parts) {
  DirectSum ds;
  ds.offsets.push_back(0);
  Vector moduli;  // concatenated coordinate moduli, 0 for free
  std::size_t torsion_count = 0;
  for (const auto& p : parts) {
    ds.offsets.push_back(ds.offsets.back() + p.rank());
    for (std::size_t i = 0; i < p.rank(); ++i) moduli.push_back(p.modulus(i));
    torsion_count += p.torsion().size();
  }
  const std::size_t n = ds.offsets.back();

  // Keep the concatenation itself when it is already in normal form.
  bool normal = true;
  std::size_t free_count = 0;
  Vector torsion;
  for (std::size_t i = 0; i < n && normal; ++i) {
    if (moduli[i] == 0) {
      normal = torsion.empty();
      ++free_count;
    } else {
      normal = torsion.empty() || moduli[i] % torsion.back() == 0;
      torsion.push_back(moduli[i]);
    }
  }
  if (normal) {
    ds.group = FgAbGroup(free_count, torsion);
    ds.to_canonical = Matrix::identity(n);
    ds.from_canonical = Matrix::identity(n);
  } else {
    Matrix rel(n, torsion_count);
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (moduli[i] != 0) rel(i, col++) = moduli[i];
    }
    const Presentation pres = present_cokernel(rel);
    ds.group = pres.group;
    ds.to_canonical = pres.to_normal;
    ds.from_canonical = pres.from_normal;
  }
  ds.parts = std::move(parts);
  return ds;
}

GroupHom direct_sum_hom(const DirectSum& source, const DirectSum& target, const Matrix& concatenated) {
  if (concatenated.rows() != target.concatenated_rank() || concatenated.cols() != source.concatenated_rank()) {
    throw std::invalid_argument("direct_sum_hom: block matrix has wrong shape");
  }
  return {source.group, target.group, target.to_canonical * concatenated * source.from_canonical};
}

// ------------------------------------------------------------ least_in_coset

Vector least_in_coset(const Subgroup& s, const Vector& x) {
  const FgAbGroup& g = s.ambient();
  std::vector<Vector> lattice = s.generators();
  for (const auto& c : g.relations().columns()) lattice.push_back(c);
  const std::vector<Vector> basis = echelon_basis(lattice, g.rank());

  Vector z = x;
  if (z.size() != g.rank()) {
    throw std::invalid_argument("least_in_coset: element has wrong rank");
  }
  for (const auto& b : basis) {
    std::size_t pivot = 0;
    while (b[pivot] == 0) ++pivot;
    const Integer& h = b[pivot];
    const Integer r0 = mod_floor(z[pivot], h);
    Integer best = r0;
    if (g.modulus(pivot) == 0 && r0 != 0 && free_key(r0 - h) < free_key(r0)) {
      best = r0 - h;
    }
    const Integer q = (z[pivot] - best) / h;
    if (q != 0) {
      for (std::size_t i = pivot; i < z.size(); ++i) z[i] -= q * b[i];
    }
  }
  return g.reduce(std::move(z));
}

}  // namespace prolim
