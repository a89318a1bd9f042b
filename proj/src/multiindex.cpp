#include "cclab/multiindex.hpp"

#include <algorithm>

namespace cclab {

MultiIndex::MultiIndex(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("multi-index dimension out of range");
}

MultiIndex::MultiIndex(std::initializer_list<int> exps) : dim_(static_cast<int>(exps.size())) {
    if (dim_ < 1 || dim_ > kMaxDim) throw DimensionMismatch("multi-index dimension out of range");
    int i = 0;
    for (int v : exps) set(i++, v);
}

MultiIndex MultiIndex::from(const std::vector<int>& exps) {
    MultiIndex m(static_cast<int>(exps.size()));
    for (size_t i = 0; i < exps.size(); ++i) m.set(static_cast<int>(i), exps[i]);
    return m;
}

MultiIndex MultiIndex::unit(int dim, int axis) {
    MultiIndex m(dim);
    m.set(axis, 1);
    return m;
}

int MultiIndex::order() const {
    int s = 0;
    for (int i = 0; i < dim_; ++i) s += e_[static_cast<size_t>(i)];
    return s;
}

void MultiIndex::set(int i, int v) {
    if (i < 0 || i >= dim_) throw DimensionMismatch("multi-index component out of range");
    if (v < 0 || v > kMaxOrder) throw OrderOverflow("multi-index exponent out of range");
    e_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(v);
    if (order() > kMaxOrder) throw OrderOverflow("multi-index order exceeds cap");
}

bool MultiIndex::operator==(const MultiIndex& o) const {
    if (dim_ != o.dim_) return false;
    for (int i = 0; i < dim_; ++i)
        if (e_[static_cast<size_t>(i)] != o.e_[static_cast<size_t>(i)]) return false;
    return true;
}

std::string MultiIndex::str() const {
    std::string s = "[";
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ',';
        s += std::to_string((*this)[i]);
    }
    return s + "]";
}

static void check_same_dim(const MultiIndex& a, const MultiIndex& b, const char* op) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string("dimension mismatch in multi-index ") + op);
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
    check_same_dim(a, b, "add");
    MultiIndex r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r.set(i, a[i] + b[i]);
    return r;
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
    check_same_dim(a, b, "sub");
    if (!leq(b, a)) throw OrderOverflow("multi-index subtraction would go negative");
    MultiIndex r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r.set(i, a[i] - b[i]);
    return r;
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
    check_same_dim(a, b, "leq");
    for (int i = 0; i < a.dim(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool strict_lt(const MultiIndex& a, const MultiIndex& b) { return leq(a, b) && !(a == b); }

static std::int64_t binom1(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::int64_t binomial(const MultiIndex& b, const MultiIndex& a) {
    check_same_dim(a, b, "binomial");
    std::int64_t r = 1;
    for (int i = 0; i < a.dim(); ++i) {
        r *= binom1(b[i], a[i]);
        if (r == 0) return 0;
    }
    return r;
}

std::int64_t factorial(const MultiIndex& a) {
    std::int64_t r = 1;
    for (int i = 0; i < a.dim(); ++i)
        for (int v = 2; v <= a[i]; ++v) r *= v;
    return r;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    check_same_dim(a, b, "compare");
    if (a.order() != b.order()) return a.order() < b.order();
    for (int i = 0; i < a.dim(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];  // (2,0) before (1,1) within a grade
    return false;
}

static void enumerate_exact(int dim, int order, std::vector<int>& cur,
                            std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == dim - 1) {
        cur.push_back(order);
        out.push_back(MultiIndex::from(cur));
        cur.pop_back();
        return;
    }
    for (int e = order; e >= 0; --e) {
        cur.push_back(e);
        enumerate_exact(dim, order - e, cur, out);
        cur.pop_back();
    }
}

std::vector<MultiIndex> enumerate(int dim, int order, EnumMode mode) {
    if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("enumerate: dimension out of range");
    if (order < 0 || order > kMaxOrder) throw OrderOverflow("enumerate: order out of range");
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    if (mode == EnumMode::exact) {
        enumerate_exact(dim, order, cur, out);
    } else {
        for (int k = 0; k <= order; ++k) enumerate_exact(dim, k, cur, out);
    }
    return out;
}

std::int64_t exact_count(int dim, int order) { return binom1(dim + order - 1, order); }

MultiIndexTuple::MultiIndexTuple(std::vector<MultiIndex> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DimensionMismatch("multi-index tuple must be nonempty");
    for (const auto& e : entries_)
        if (e.dim() != entries_.front().dim())
            throw DimensionMismatch("multi-index tuple entries have mixed dimensions");
}

std::string MultiIndexTuple::str() const {
    std::string s = "(";
    for (int i = 0; i < size(); ++i) {
        if (i) s += ',';
        s += entries_[static_cast<size_t>(i)].str();
    }
    return s + ")";
}

bool tuple_prec(const MultiIndexTuple& g, const MultiIndexTuple& t) {
    if (g.size() != t.size())
        throw DimensionMismatch("tuple_prec: tuples of different length");
    bool strict = false;
    for (int i = 0; i < g.size(); ++i) {
        if (!leq(g[i], t[i])) return false;
        if (!(g[i] == t[i])) strict = true;
    }
    return strict;
}

bool tuple_less(const MultiIndexTuple& a, const MultiIndexTuple& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return graded_lex_less(a[i], b[i]);
    }
    return false;
}

}  // namespace cclab
