#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cclab {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxOrder = 12;

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct OrderOverflow : std::runtime_error {
    explicit OrderOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Exponent vector of a mixed partial derivative in n variables, n <= 8.
/// Total order is capped at 12 to keep every enumeration in the engine bounded.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(int dim);
    MultiIndex(std::initializer_list<int> exps);
    static MultiIndex from(const std::vector<int>& exps);
    static MultiIndex unit(int dim, int axis);  // e_axis, 0-based axis

    int dim() const { return dim_; }
    int order() const;
    int operator[](int i) const { return e_[static_cast<size_t>(i)]; }
    void set(int i, int v);
    bool is_zero() const { return order() == 0; }

    bool operator==(const MultiIndex& o) const;
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }

    std::string str() const;  // "[a1,a2,...,an]"

  private:
    int dim_ = 0;
    std::array<std::uint8_t, kMaxDim> e_{};
};

MultiIndex add(const MultiIndex& a, const MultiIndex& b);
// componentwise difference; requires b <= a
MultiIndex sub(const MultiIndex& a, const MultiIndex& b);

// componentwise partial order
bool leq(const MultiIndex& a, const MultiIndex& b);
bool strict_lt(const MultiIndex& a, const MultiIndex& b);

// product of componentwise binomial coefficients; 0 unless a <= b
std::int64_t binomial(const MultiIndex& b, const MultiIndex& a);

std::int64_t factorial(const MultiIndex& a);  // prod a_i!

// graded lexicographic total order, used for canonical forms
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct MultiIndexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return graded_lex_less(a, b);
    }
};

enum class EnumMode { exact, upto };

// Deterministic enumeration; for a fixed order the indices come out in
// decreasing lexicographic order, e.g. (2,0),(1,1),(0,2). Mode upto
// concatenates orders 0..k in that scheme.
std::vector<MultiIndex> enumerate(int dim, int order, EnumMode mode);

std::int64_t exact_count(int dim, int order);  // C(dim+order-1, order)

/// Tuple (theta^1,...,theta^r) of multi-indices with uniform dimension.
class MultiIndexTuple {
  public:
    MultiIndexTuple() = default;
    explicit MultiIndexTuple(std::vector<MultiIndex> entries);

    int size() const { return static_cast<int>(entries_.size()); }
    int dim() const { return entries_.empty() ? 0 : entries_.front().dim(); }
    const MultiIndex& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    const std::vector<MultiIndex>& entries() const { return entries_; }

    bool operator==(const MultiIndexTuple& o) const { return entries_ == o.entries_; }
    std::string str() const;

  private:
    std::vector<MultiIndex> entries_;
};

// entrywise <= with strict inequality in at least one entry
bool tuple_prec(const MultiIndexTuple& g, const MultiIndexTuple& t);

bool tuple_less(const MultiIndexTuple& a, const MultiIndexTuple& b);

}  // namespace cclab
