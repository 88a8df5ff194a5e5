#include "uce/leibniz_homology.hpp"

#include <cstdlib>
#include <map>

namespace uce {

std::size_t default_max_cols() {
  if (const char* env = std::getenv("UCE_LAB_MAX_COLS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultMaxCols;
}

namespace {

template <ExactScalar S>
void check_cap(const SuperAlgebra<S>& l, const LeibnizOptions& opts) {
  const std::size_t n = l.dim();
  const std::size_t cols = n * n * n;
  if (opts.max_cols != 0 && cols > opts.max_cols)
    throw ResourceCapError("d_3 on " + l.name() + " needs " + std::to_string(cols) + " columns, cap is " +
                           std::to_string(opts.max_cols));
}

// x⊗y for coordinate vectors over L
template <ExactScalar S>
SparseVector<S> pair(std::size_t n, const SparseVector<S>& x, const SparseVector<S>& y) {
  std::vector<typename SparseVector<S>::Entry> out;
  out.reserve(x.nnz() * y.nnz());
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) out.emplace_back(static_cast<std::uint32_t>(i * n + j), a * b);
  return SparseVector<S>::from_sorted(std::move(out));
}

// d_2 on a vector of L⊗L
template <ExactScalar S>
SparseVector<S> d2(const SuperAlgebra<S>& l, const SparseVector<S>& u) {
  const std::size_t n = l.dim();
  LinearCombination<S> acc;
  for (const auto& [p, c] : u) acc.add(c, l.bracket(p / n, p % n));
  return std::move(acc).build();
}

Weight add(const Weight& a, const Weight& b) {
  Weight w = a;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += b[i];
  return w;
}

}  // namespace

template <ExactScalar S>
SparseVector<S> leibniz_d3(const SuperAlgebra<S>& l, std::size_t x, std::size_t y, std::size_t z) {
  const std::size_t n = l.dim();
  LinearCombination<S> acc;
  for (const auto& [k, c] : l.bracket(x, y)) acc.add(static_cast<std::uint32_t>(k * n + z), c);
  for (const auto& [k, c] : l.bracket(y, z)) acc.add(static_cast<std::uint32_t>(x * n + k), S(-c));
  const S s = l.sign(x, y);
  for (const auto& [k, c] : l.bracket(x, z)) acc.add(static_cast<std::uint32_t>(y * n + k), S(s * c));
  return std::move(acc).build();
}

template <ExactScalar S>
ExactMatrix<S> leibniz_boundary_super(const SuperAlgebra<S>& l, std::size_t deg, const LeibnizOptions& opts) {
  const std::size_t n = l.dim();
  if (deg == 2) {
    ExactMatrix<S> m(n, n * n, l.field());
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) m.set_column(x * n + y, l.bracket(x, y));
    return m;
  }
  if (deg != 3) throw ComplexError("Leibniz boundary degree must be 2 or 3");
  check_cap(l, opts);
  ExactMatrix<S> m(n * n, n * n * n, l.field());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto col = leibniz_d3(l, x, y, z);
        if (!d2(l, col).empty())
          throw ComplexError("Leibniz d_2∘d_3 != 0 on (" + l.labels()[x] + ", " + l.labels()[y] + ", " +
                             l.labels()[z] + ")");
        m.set_column((x * n + y) * n + z, std::move(col));
      }
  return m;
}

template <ExactScalar S>
Subspace<S> leibniz_d3_image(const SuperAlgebra<S>& l, const LeibnizOptions& opts) {
  check_cap(l, opts);
  const std::size_t n = l.dim();
  // weight blocks of L⊗L (a single block when ungraded)
  std::map<Weight, std::size_t> block_of_weight;
  std::vector<std::size_t> pair_block(n * n, 0);
  if (l.has_weights()) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const Weight w = add(l.weights()[x], l.weights()[y]);
        auto it = block_of_weight.try_emplace(w, block_of_weight.size()).first;
        pair_block[x * n + y] = it->second;
      }
  }
  const std::size_t blocks = l.has_weights() ? block_of_weight.size() : 1;
  // target rank per block: dim ker d_2 restricted to the block
  std::vector<std::size_t> size(blocks, 0);
  std::vector<Echelon<S>> d2_rank(blocks, Echelon<S>(n, l.field()));
  for (std::size_t p = 0; p < n * n; ++p) {
    ++size[pair_block[p]];
    d2_rank[pair_block[p]].insert(l.bracket(p / n, p % n));
  }
  std::vector<std::size_t> target(blocks);
  std::size_t open = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    target[b] = size[b] - d2_rank[b].rank();
    if (target[b] > 0) ++open;
  }
  d2_rank.clear();

  Echelon<S> img(n * n, l.field());
  std::vector<std::size_t> rank(blocks, 0);
  for (std::size_t x = 0; x < n && open > 0; ++x)
    for (std::size_t y = 0; y < n && open > 0; ++y)
      for (std::size_t z = 0; z < n && open > 0; ++z) {
        std::size_t b = 0;
        if (l.has_weights()) {
          auto it = block_of_weight.find(add(add(l.weights()[x], l.weights()[y]), l.weights()[z]));
          if (it == block_of_weight.end()) continue;  // no pair of that weight: the column is zero
          b = it->second;
        }
        if (rank[b] == target[b]) continue;
        const auto col = leibniz_d3(l, x, y, z);
        if (col.empty()) continue;
        if (!d2(l, col).empty())
          throw ComplexError("Leibniz d_2∘d_3 != 0 on (" + l.labels()[x] + ", " + l.labels()[y] + ", " +
                             l.labels()[z] + ")");
        if (img.insert(col) && ++rank[b] == target[b]) --open;
      }
  return img.subspace();
}

template <ExactScalar S>
HomologyResult<S> leibniz_h2(const SuperAlgebra<S>& l, const Subspace<S>& d3_image) {
  return make_homology<S>(2, kernel(leibniz_boundary_super(l, 2)), d3_image);
}

template <ExactScalar S>
HomologyResult<S> leibniz_h2(const SuperAlgebra<S>& l, const LeibnizOptions& opts) {
  return leibniz_h2(l, leibniz_d3_image(l, opts));
}

template <ExactScalar S>
bool is_central(const SuperAlgebra<S>& total, const Subspace<S>& k) {
  for (const auto& u : k.basis())
    for (std::size_t i = 0; i < total.dim(); ++i)
      if (!total.bracket_basis_left(i, u).empty() || !total.bracket_basis_right(u, i).empty()) return false;
  return true;
}

template <ExactScalar S>
ExtensionCheck check_extension(const CentralExtension<S>& e) {
  ExtensionCheck c;
  c.surjective = image(e.proj).dim() == e.base.dim();
  c.homomorphism = is_homomorphism(e.proj, e.total, e.base);
  c.central = kernel(e.proj) == e.kernel && is_central(e.total, e.kernel);
  return c;
}

template <ExactScalar S>
SparseVector<S> UniversalExtension<S>::class_of(const SparseVector<S>& x, const SparseVector<S>& y) const {
  return classes.projector.apply(pair(ext.base.dim(), x, y));
}

template <ExactScalar S>
UniversalExtension<S> uce_leibniz(const SuperAlgebra<S>& l, Subspace<S> d3_image) {
  if (!is_perfect(l)) throw SuperAlgebraError(l.name() + " is not perfect; no universal central extension");
  const std::size_t n = l.dim();
  auto q = quotient(n * n, d3_image);
  const std::size_t t = q.dim;
  std::vector<std::string> labels;
  std::vector<std::uint8_t> parity;
  std::vector<Weight> weights;
  std::vector<SparseVector<S>> images;  // d_2 of each total basis vector
  for (const auto p : q.representatives) {
    const std::size_t x = p / n, y = p % n;
    labels.push_back("<" + l.labels()[x] + "|" + l.labels()[y] + ">");
    parity.push_back(static_cast<std::uint8_t>((l.parity(x) + l.parity(y)) % 2));
    if (l.has_weights()) weights.push_back(add(l.weights()[x], l.weights()[y]));
    images.push_back(l.bracket(x, y));
  }
  std::vector<SparseVector<S>> brackets(t * t);
  for (std::size_t r = 0; r < t; ++r)
    for (std::size_t s = 0; s < t; ++s) brackets[r * t + s] = q.projector.apply(pair(n, images[r], images[s]));
  SuperAlgebra<S> total("uce(" + l.name() + ")", l.field(), std::move(labels), std::move(parity), std::move(brackets),
                        std::move(weights));
  ExactMatrix<S> proj(n, l.field(), std::move(images));
  Subspace<S> k = kernel(proj);
  UniversalExtension<S> u{CentralExtension<S>{std::move(total), l, std::move(proj), std::move(k)}, std::move(d3_image),
                          std::move(q)};
  return u;
}

template <ExactScalar S>
UniversalExtension<S> uce_leibniz(const SuperAlgebra<S>& l, const LeibnizOptions& opts) {
  if (!is_perfect(l)) throw SuperAlgebraError(l.name() + " is not perfect; no universal central extension");
  return uce_leibniz(l, leibniz_d3_image(l, opts));
}

template <ExactScalar S>
LieH2<S> lie_h2(const SuperAlgebra<S>& l, const Subspace<S>& leib_image) {
  if (!check_pairs(l).is_lie()) throw SuperAlgebraError(l.name() + " is not a Lie superalgebra");
  const std::size_t n = l.dim();
  Echelon<S> sym(n * n, l.field());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      LinearCombination<S> acc;
      acc.add(static_cast<std::uint32_t>(x * n + y), l.one());
      acc.add(static_cast<std::uint32_t>(y * n + x), l.sign(x, y));
      sym.insert(std::move(acc).build());
    }
  const auto alt = sym.subspace();
  auto wedge = quotient(n * n, alt);
  for (const auto& r : alt.basis())
    if (!d2(l, r).empty()) throw ComplexError("bracket does not descend to the super-alternating square");
  ExactMatrix<S> d2bar(n, wedge.dim, l.field());
  for (std::size_t c = 0; c < wedge.dim; ++c) {
    const auto p = wedge.representatives[c];
    d2bar.set_column(c, l.bracket(p / n, p % n));
  }
  auto bnd = map_subspace(wedge.projector, leib_image);
  for (const auto& b : bnd.basis())
    if (!d2bar.apply(b).empty()) throw ComplexError("Lie d_2∘d_3 != 0");
  auto h = make_homology<S>(2, kernel(d2bar), std::move(bnd));
  return LieH2<S>{std::move(h), std::move(wedge), std::move(d2bar)};
}

template <ExactScalar S>
LieH2<S> lie_h2(const SuperAlgebra<S>& l, const LeibnizOptions& opts) {
  return lie_h2(l, leibniz_d3_image(l, opts));
}

template <ExactScalar S>
std::size_t hl2_to_h2_rank(const HomologyResult<S>& hl2, const LieH2<S>& h2) {
  Echelon<S> e(h2.homology.dim, h2.homology.cycles.field());
  for (const auto& r : hl2.representatives) e.insert(h2.homology.class_of(h2.wedge.projector.apply(r)));
  return e.rank();
}

#define UCE_INSTANTIATE_LEIBNIZ(S)                                                                           \
  template ExactMatrix<S> leibniz_boundary_super<S>(const SuperAlgebra<S>&, std::size_t, const LeibnizOptions&); \
  template SparseVector<S> leibniz_d3<S>(const SuperAlgebra<S>&, std::size_t, std::size_t, std::size_t);    \
  template Subspace<S> leibniz_d3_image<S>(const SuperAlgebra<S>&, const LeibnizOptions&);                   \
  template HomologyResult<S> leibniz_h2<S>(const SuperAlgebra<S>&, const LeibnizOptions&);                   \
  template HomologyResult<S> leibniz_h2<S>(const SuperAlgebra<S>&, const Subspace<S>&);                      \
  template bool is_central<S>(const SuperAlgebra<S>&, const Subspace<S>&);                                   \
  template ExtensionCheck check_extension<S>(const CentralExtension<S>&);                                    \
  template struct UniversalExtension<S>;                                                                     \
  template UniversalExtension<S> uce_leibniz<S>(const SuperAlgebra<S>&, const LeibnizOptions&);              \
  template UniversalExtension<S> uce_leibniz<S>(const SuperAlgebra<S>&, Subspace<S>);                        \
  template LieH2<S> lie_h2<S>(const SuperAlgebra<S>&, const LeibnizOptions&);                                \
  template LieH2<S> lie_h2<S>(const SuperAlgebra<S>&, const Subspace<S>&);                                   \
  template std::size_t hl2_to_h2_rank<S>(const HomologyResult<S>&, const LieH2<S>&);

UCE_INSTANTIATE_LEIBNIZ(Rational)
UCE_INSTANTIATE_LEIBNIZ(ModP)

}  // namespace uce
