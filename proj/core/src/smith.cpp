#include "prolim/smith.hpp"

#include <stdexcept>

namespace prolim {

namespace {

// Elementary operations applied to D, mirrored on U/U^-1 (rows) and V/V^-1
// (columns) so that U * M * V == D holds after every step.
struct Reducer {
  SmithForm& s;

  void swap_rows(std::size_t a, std::size_t b) {
    s.D.swap_rows(a, b);
    s.U.swap_rows(a, b);
    s.U_inverse.swap_columns(a, b);
  }
  void swap_columns(std::size_t a, std::size_t b) {
    s.D.swap_columns(a, b);
    s.V.swap_columns(a, b);
    s.V_inverse.swap_rows(a, b);
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    s.D.add_row_multiple(dst, src, k);
    s.U.add_row_multiple(dst, src, k);
    s.U_inverse.add_column_multiple(src, dst, -k);
  }
  // col[dst] += k * col[src]
  void add_column(std::size_t dst, std::size_t src, const Integer& k) {
    s.D.add_column_multiple(dst, src, k);
    s.V.add_column_multiple(dst, src, k);
    s.V_inverse.add_row_multiple(src, dst, -k);
  }
  void negate_row(std::size_t r) {
    s.D.negate_row(r);
    s.U.negate_row(r);
    s.U_inverse.negate_column(r);
  }
};

bool find_min_pivot(const Matrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t r = t; r < d.rows(); ++r) {
    for (std::size_t c = t; c < d.cols(); ++c) {
      if (d(r, c) == 0) {
        continue;
      }
      Integer a = abs_value(d(r, c));
      if (!found || a < best) {
        best = std::move(a);
        pr = r;
        pc = c;
        found = true;
        if (best == 1) {
          return true;
        }
      }
    }
  }
  return found;
}

}  // namespace

Vector SmithForm::invariant_factors() const {
  Vector out;
  for (std::size_t i = 0; i < rank; ++i) {
    out.push_back(D(i, i));
  }
  return out;
}

SmithForm smith_normal_form(const Matrix& m) {
  SmithForm s{Matrix::identity(m.rows()), m, Matrix::identity(m.cols()), Matrix::identity(m.rows()),
              Matrix::identity(m.cols()), 0};
  Reducer op{s};
  Matrix& d = s.D;
  const std::size_t limit = std::min(m.rows(), m.cols());

  std::size_t t = 0;
  for (; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_min_pivot(d, t, pr, pc)) {
      break;
    }
    op.swap_rows(t, pr);
    op.swap_columns(t, pc);

    while (true) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (d(r, t) != 0) {
          op.add_row(r, t, -(d(r, t) / d(t, t)));
          dirty = dirty || d(r, t) != 0;
        }
      }
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (d(t, c) != 0) {
          op.add_column(c, t, -(d(t, c) / d(t, t)));
          dirty = dirty || d(t, c) != 0;
        }
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t best_r = t, best_c = t;
        Integer best = abs_value(d(t, t));
        for (std::size_t r = t + 1; r < d.rows(); ++r) {
          if (d(r, t) != 0 && abs_value(d(r, t)) < best) {
            best = abs_value(d(r, t));
            best_r = r;
            best_c = t;
          }
        }
        for (std::size_t c = t + 1; c < d.cols(); ++c) {
          if (d(t, c) != 0 && abs_value(d(t, c)) < best) {
            best = abs_value(d(t, c));
            best_r = t;
            best_c = c;
          }
        }
        op.swap_rows(t, best_r);
        op.swap_columns(t, best_c);
        continue;
      }
      // Row and column are clear; enforce divisibility of the remaining block.
      bool divides = true;
      for (std::size_t r = t + 1; r < d.rows() && divides; ++r) {
        for (std::size_t c = t + 1; c < d.cols(); ++c) {
          if (d(r, c) % d(t, t) != 0) {
            op.add_row(t, r, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) {
        break;
      }
    }
    if (d(t, t) < 0) {
      op.negate_row(t);
    }
  }
  s.rank = t;
  return s;
}

Matrix integer_kernel(const Matrix& m) {
  const SmithForm s = smith_normal_form(m);
  std::vector<std::size_t> cols;
  for (std::size_t c = s.rank; c < m.cols(); ++c) {
    cols.push_back(c);
  }
  return s.V.select_columns(cols);
}

std::optional<Vector> solve_integer(const SmithForm& s, const Vector& y) {
  if (y.size() != s.U.cols()) {
    throw std::invalid_argument("solve_integer: right-hand side has wrong length");
  }
  const Vector c = s.U * y;
  Vector w(s.V.rows());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.D(i, i) != 0) {
        return std::nullopt;
      }
      w[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * w;
}

std::optional<Vector> solve_integer(const Matrix& m, const Vector& y) {
  return solve_integer(smith_normal_form(m), y);
}

std::vector<Vector> echelon_basis(const std::vector<Vector>& generators, std::size_t dimension) {
  std::vector<Vector> rows;
  for (const auto& g : generators) {
    if (g.size() != dimension) {
      throw std::invalid_argument("echelon_basis: generator has wrong dimension");
    }
    rows.push_back(g);
  }
  std::vector<Vector> basis;
  for (std::size_t coord = 0; coord < dimension && !rows.empty(); ++coord) {
    // Fold all rows with a nonzero entry at `coord` into a single pivot row
    // via extended gcd; the others lose their entry there.
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][coord] == 0) {
        continue;
      }
      if (!pivot) {
        pivot = i;
        continue;
      }
      Vector& p = rows[*pivot];
      Vector& q = rows[i];
      const ExtendedGcd e = extended_gcd(p[coord], q[coord]);
      const Integer a = p[coord] / e.g;
      const Integer b = q[coord] / e.g;
      for (std::size_t k = coord; k < dimension; ++k) {
        Integer np = e.x * p[k] + e.y * q[k];
        Integer nq = a * q[k] - b * p[k];
        p[k] = std::move(np);
        q[k] = std::move(nq);
      }
    }
    if (!pivot) {
      continue;
    }
    Vector p = std::move(rows[*pivot]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*pivot));
    if (p[coord] < 0) {
      for (auto& v : p) {
        v = -v;
      }
    }
    basis.push_back(std::move(p));
  }
  return basis;
}

}  // namespace prolim
