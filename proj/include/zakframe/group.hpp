#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zakframe/error.hpp"
#include "zakframe/tolerances.hpp"

namespace zakframe {

/// A finite group with elements indexed 0..order()-1.
///
/// Two representations are supported. Product groups Z_{N1} x ... x Z_{Nd} use
/// a row-major mixed-radix index (first coordinate most significant) and
/// componentwise modular addition. Cayley groups carry an explicit
/// multiplication table and may be non-abelian.
class Group {
 public:
  enum class Kind { product, cayley };

  Kind kind() const noexcept { return kind_; }
  std::size_t order() const noexcept { return order_; }
  int identity() const noexcept { return identity_; }
  bool is_abelian() const noexcept { return abelian_; }

  /// Cyclic factor orders; empty for Cayley groups.
  const std::vector<int>& orders() const noexcept { return orders_; }
  /// Multiplication table; empty for product groups.
  const std::vector<std::vector<int>>& table() const noexcept { return table_; }

  int multiply(int a, int b) const {
    if (kind_ == Kind::cayley) return table_[a][b];
    int result = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const int da = (a / strides_[i]) % orders_[i];
      const int db = (b / strides_[i]) % orders_[i];
      result += ((da + db) % orders_[i]) * strides_[i];
    }
    return result;
  }

  int inverse(int a) const {
    if (kind_ == Kind::cayley) return inverses_[a];
    int result = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const int da = (a / strides_[i]) % orders_[i];
      result += ((orders_[i] - da) % orders_[i]) * strides_[i];
    }
    return result;
  }

  /// Mixed-radix coordinates of a product-group element.
  std::vector<int> digits(int x) const {
    std::vector<int> out(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) out[i] = (x / strides_[i]) % orders_[i];
    return out;
  }

  int encode(std::span<const int> coords) const {
    if (coords.size() != orders_.size())
      throw Error(ErrorKind::invalid_argument, "coordinate count does not match group rank");
    int x = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const int c = ((coords[i] % orders_[i]) + orders_[i]) % orders_[i];
      x += c * strides_[i];
    }
    return x;
  }

  bool contains(int x) const noexcept { return x >= 0 && static_cast<std::size_t>(x) < order_; }

  /// Order of an element (smallest k >= 1 with x^k = e).
  int element_order(int x) const {
    int k = 1;
    for (int y = x; y != identity_; y = multiply(y, x)) ++k;
    return k;
  }

  friend bool operator==(const Group& a, const Group& b) {
    return a.kind_ == b.kind_ && a.orders_ == b.orders_ && a.table_ == b.table_;
  }

 private:
  friend std::shared_ptr<const Group> make_product_group(std::vector<int>, const Limits&);
  friend std::shared_ptr<const Group> make_cayley_group(std::vector<std::vector<int>>, const Limits&);
  friend std::shared_ptr<const Group> direct_product_cyclic(const std::shared_ptr<const Group>&, int);

  static std::shared_ptr<Group> product(std::vector<int> orders, std::size_t order) {
    auto g = std::shared_ptr<Group>(new Group());
    g->kind_ = Kind::product;
    g->order_ = order;
    g->orders_ = std::move(orders);
    g->strides_.assign(g->orders_.size(), 1);
    for (std::size_t i = g->orders_.size(); i-- > 1;)
      g->strides_[i - 1] = g->strides_[i] * g->orders_[i];
    g->identity_ = 0;
    g->abelian_ = true;
    return g;
  }

  Group() = default;

  Kind kind_ = Kind::product;
  std::size_t order_ = 1;
  int identity_ = 0;
  bool abelian_ = true;
  std::vector<int> orders_;
  std::vector<int> strides_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
};

using GroupPtr = std::shared_ptr<const Group>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline GroupPtr make_product_group(std::vector<int> orders, const Limits& limits = default_limits()) {
  std::size_t order = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1)
      throw Error(ErrorKind::invalid_group,
                  "cyclic factor " + std::to_string(i) + " has order " + std::to_string(orders[i]));
    order *= static_cast<std::size_t>(orders[i]);
    if (order > limits.max_product_order)
      throw Error(ErrorKind::size_limit, "product group exceeds " +
                                             std::to_string(limits.max_product_order) + " elements");
  }
  return Group::product(std::move(orders), order);
}

inline GroupPtr make_cayley_group(std::vector<std::vector<int>> table,
                                  const Limits& limits = default_limits()) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::invalid_group, "empty Cayley table");
  if (n > limits.max_cayley_order)
    throw Error(ErrorKind::size_limit, "Cayley table of order " + std::to_string(n) +
                                           " exceeds cap " + std::to_string(limits.max_cayley_order));
  const int ni = static_cast<int>(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n)
      throw Error(ErrorKind::invalid_group, "row " + std::to_string(r) + " has wrong length");
    for (int v : table[r])
      if (v < 0 || v >= ni)
        throw Error(ErrorKind::invalid_group, "entry " + std::to_string(v) + " out of range in row " +
                                                  std::to_string(r));
  }

  int identity = -1;
  for (int e = 0; e < ni && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < ni && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error(ErrorKind::invalid_group, "no identity element");

  std::vector<int> inverses(n, -1);
  for (int x = 0; x < ni; ++x) {
    for (int y = 0; y < ni; ++y)
      if (table[x][y] == identity && table[y][x] == identity) {
        inverses[x] = y;
        break;
      }
    if (inverses[x] < 0)
      throw Error(ErrorKind::invalid_group, "element " + std::to_string(x) + " has no inverse");
  }

  for (int a = 0; a < ni; ++a)
    for (int b = 0; b < ni; ++b)
      for (int c = 0; c < ni; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorKind::invalid_group, "associativity fails for triple (" + std::to_string(a) +
                                                    ", " + std::to_string(b) + ", " + std::to_string(c) +
                                                    ")");

  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = Group::Kind::cayley;
  g->order_ = n;
  g->identity_ = identity;
  g->inverses_ = std::move(inverses);
  g->table_ = std::move(table);
  g->abelian_ = true;
  for (int a = 0; a < ni && g->abelian_; ++a)
    for (int b = a + 1; b < ni && g->abelian_; ++b) g->abelian_ = g->table_[a][b] == g->table_[b][a];
  return g;
}

/// G x Z_n with element (x, k) at index x * n + k.
inline GroupPtr direct_product_cyclic(const GroupPtr& g, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_group, "cyclic factor must have order >= 1");
  if (g->kind() == Group::Kind::product) {
    auto orders = g->orders();
    orders.push_back(n);
    return Group::product(std::move(orders), g->order() * static_cast<std::size_t>(n));
  }
  const int m = static_cast<int>(g->order());
  const int size = m * n;
  auto p = std::shared_ptr<Group>(new Group());
  p->kind_ = Group::Kind::cayley;
  p->order_ = static_cast<std::size_t>(size);
  p->identity_ = g->identity() * n;
  p->table_.assign(size, std::vector<int>(size));
  p->inverses_.assign(size, 0);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b)
      p->table_[a][b] = g->multiply(a / n, b / n) * n + (a % n + b % n) % n;
    p->inverses_[a] = g->inverse(a / n) * n + (n - a % n) % n;
  }
  p->abelian_ = g->is_abelian();
  return p;
}

}  // namespace zakframe
