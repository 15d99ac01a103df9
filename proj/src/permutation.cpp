#include "gapcert/permutation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gapcert {

std::uint64_t factorial(int n) {
    if (n < 0 || n > 20) {
        throw std::out_of_range("factorial argument out of range");
    }
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) {
        r *= static_cast<std::uint64_t>(i);
    }
    return r;
}

static void check_degree(int t) {
    if (t < 0 || t > kMaxDegree) {
        throw std::invalid_argument("permutation degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
    }
}

Permutation::Permutation(const std::vector<int> &images) {
    int t = static_cast<int>(images.size());
    check_degree(t);
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < t; ++i) {
        int v = images[i];
        if (v < 0 || v >= t || seen[v]) {
            throw std::invalid_argument("images do not form a bijection");
        }
        seen[v] = true;
        images_[i] = static_cast<std::uint8_t>(v);
    }
    degree_ = t;
}

Permutation Permutation::identity(int t) {
    check_degree(t);
    Permutation p;
    p.degree_ = t;
    for (int i = 0; i < t; ++i) {
        p.images_[i] = static_cast<std::uint8_t>(i);
    }
    return p;
}

Permutation Permutation::transposition(int t, int a, int b) {
    if (a < 0 || b < 0 || a >= t || b >= t) {
        throw std::invalid_argument("transposition indices out of range");
    }
    Permutation p = identity(t);
    std::swap(p.images_[a], p.images_[b]);
    return p;
}

Permutation Permutation::unrank(int t, std::uint64_t rank) {
    check_degree(t);
    if (rank >= factorial(t)) {
        throw std::out_of_range("rank exceeds t!");
    }
    std::vector<int> pool(t);
    std::iota(pool.begin(), pool.end(), 0);
    Permutation p;
    p.degree_ = t;
    for (int i = 0; i < t; ++i) {
        std::uint64_t f = factorial(t - 1 - i);
        std::uint64_t digit = rank / f;
        rank %= f;
        p.images_[i] = static_cast<std::uint8_t>(pool[digit]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return p;
}

std::vector<int> Permutation::images() const {
    return std::vector<int>(images_.begin(), images_.begin() + degree_);
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.degree_ = degree_;
    for (int i = 0; i < degree_; ++i) {
        p.images_[images_[i]] = static_cast<std::uint8_t>(i);
    }
    return p;
}

int Permutation::cycle_count() const {
    std::array<bool, kMaxDegree> seen{};
    int cycles = 0;
    for (int i = 0; i < degree_; ++i) {
        if (seen[i]) {
            continue;
        }
        ++cycles;
        for (int j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
        }
    }
    return cycles;
}

std::vector<int> Permutation::cycle_type() const {
    std::array<bool, kMaxDegree> seen{};
    std::vector<int> type;
    for (int i = 0; i < degree_; ++i) {
        if (seen[i]) {
            continue;
        }
        int len = 0;
        for (int j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end(), std::greater<int>());
    return type;
}

int Permutation::fixed_point_count() const {
    int n = 0;
    for (int i = 0; i < degree_; ++i) {
        n += images_[i] == i;
    }
    return n;
}

std::uint64_t Permutation::rank() const {
    std::uint64_t r = 0;
    for (int i = 0; i < degree_; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < degree_; ++j) {
            smaller += images_[j] < images_[i];
        }
        r += static_cast<std::uint64_t>(smaller) * factorial(degree_ - 1 - i);
    }
    return r;
}

Permutation Permutation::extended(int t) const {
    if (t < degree_) {
        throw std::invalid_argument("cannot restrict a permutation to a smaller degree");
    }
    Permutation p = identity(t);
    for (int i = 0; i < degree_; ++i) {
        p.images_[i] = images_[i];
    }
    return p;
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    out << '[';
    for (int i = 0; i < degree_; ++i) {
        out << (i ? " " : "") << static_cast<int>(images_[i]);
    }
    out << ']';
    return out.str();
}

Permutation compose(const Permutation &a, const Permutation &b) {
    if (a.degree() != b.degree()) {
        throw std::invalid_argument("compose: degree mismatch");
    }
    std::vector<int> images(a.degree());
    for (int i = 0; i < a.degree(); ++i) {
        images[i] = a[b[i]];
    }
    return Permutation(images);
}

int cayley_distance(const Permutation &a, const Permutation &b) {
    return compose(a.inverse(), b).length();
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) {
            throw std::invalid_argument("partition parts must be positive");
        }
        if (i > 0 && parts_[i] > parts_[i - 1]) {
            throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }
}

int Partition::size() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    if (!parts_.empty()) {
        for (int j = 0; j < parts_[0]; ++j) {
            int len = 0;
            for (int p : parts_) {
                len += p > j;
            }
            c.push_back(len);
        }
    }
    return Partition(c);
}

std::string Partition::label() const {
    bool wide = std::any_of(parts_.begin(), parts_.end(), [](int p) { return p > 9; });
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (wide && i > 0) {
            s += ',';
        }
        s += std::to_string(parts_[i]);
    }
    return s;
}

std::uint64_t Partition::centralizer_order() const {
    std::uint64_t z = 1;
    std::size_t i = 0;
    while (i < parts_.size()) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) {
            ++j;
        }
        int mult = static_cast<int>(j - i);
        for (int k = 0; k < mult; ++k) {
            z *= static_cast<std::uint64_t>(parts_[i]);
        }
        z *= factorial(mult);
        i = j;
    }
    return z;
}

std::uint64_t Partition::class_size() const {
    return factorial(size()) / centralizer_order();
}

std::vector<int> Partition::contents() const {
    std::vector<int> c;
    for (int i = 0; i < rows(); ++i) {
        for (int j = 0; j < parts_[i]; ++j) {
            c.push_back(j - i);
        }
    }
    return c;
}

std::vector<int> Partition::hook_lengths() const {
    Partition conj = conjugate();
    std::vector<int> h;
    for (int i = 0; i < rows(); ++i) {
        for (int j = 0; j < parts_[i]; ++j) {
            h.push_back((parts_[i] - j - 1) + (conj[j] - i - 1) + 1);
        }
    }
    return h;
}

std::uint64_t Partition::hook_dimension() const {
    // Exact: t! is divisible by the hook product.
    std::uint64_t prod = 1;
    for (int h : hook_lengths()) {
        prod *= static_cast<std::uint64_t>(h);
    }
    return factorial(size()) / prod;
}

static void partitions_rec(int remaining, int max_part, std::vector<int> &current, std::vector<Partition> &out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        current.push_back(p);
        partitions_rec(remaining - p, p, current, out);
        current.pop_back();
    }
}

std::vector<Partition> partitions(int t) {
    std::vector<Partition> out;
    std::vector<int> current;
    partitions_rec(t, t, current, out);
    return out;
}

Partition parse_partition(const std::string &text) {
    std::vector<int> parts;
    if (text.find(',') != std::string::npos) {
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            parts.push_back(std::stoi(item));
        }
    } else {
        for (char c : text) {
            if (c < '1' || c > '9') {
                throw std::invalid_argument("bad partition label: " + text);
            }
            parts.push_back(c - '0');
        }
    }
    return Partition(parts);
}

bool is_complete_derangement(const PermutationTuple &tuple) {
    if (tuple.empty()) {
        throw std::invalid_argument("empty permutation tuple");
    }
    int t = tuple[0].degree();
    for (const auto &p : tuple) {
        if (p.degree() != t) {
            throw std::invalid_argument("permutation tuple with mixed degrees");
        }
    }
    for (int i = 0; i < t; ++i) {
        bool common = true;
        for (std::size_t k = 1; k < tuple.size() && common; ++k) {
            common = tuple[k][i] == tuple[0][i];
        }
        if (common) {
            return false;
        }
    }
    return true;
}

std::vector<Transposition> jucys_murphy_decomposition(const Permutation &sigma) {
    int t = sigma.degree();
    std::vector<int> img = sigma.images();
    std::vector<int> pre(t);
    for (int i = 0; i < t; ++i) {
        pre[img[i]] = i;
    }
    std::vector<Transposition> factors;
    for (int b = t - 1; b >= 1; --b) {
        int a = pre[b];
        if (a == b) {
            continue;
        }
        factors.emplace_back(a, b);
        // pi <- pi ∘ s_{ab}
        int ia = img[a], ib = img[b];
        img[a] = ib;
        img[b] = ia;
        pre[ib] = a;
        pre[ia] = b;
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

Permutation product_of_transpositions(int t, const std::vector<Transposition> &factors) {
    Permutation p = Permutation::identity(t);
    for (const auto &[a, b] : factors) {
        p = compose(p, Permutation::transposition(t, a, b));
    }
    return p;
}

CosetSplit minimal_coset_representative(const Permutation &sigma, int l) {
    int t = sigma.degree();
    if (l < 1 || l > t) {
        throw std::invalid_argument("coset threshold must satisfy 1 <= l <= t");
    }
    std::vector<Transposition> head, tail;
    for (const auto &f : jucys_murphy_decomposition(sigma)) {
        (f.second < l ? head : tail).push_back(f);
    }
    return {product_of_transpositions(t, head), product_of_transpositions(t, tail)};
}

}  // namespace gapcert
