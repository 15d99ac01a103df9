#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gapcert {

inline constexpr int kMaxDegree = 12;
inline constexpr int kMaxEnumerationDegree = 8;

std::uint64_t factorial(int n);

// Element of S_t in one-line form: images()[i] is the image of i.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(const std::vector<int> &images);

    static Permutation identity(int t);
    static Permutation transposition(int t, int a, int b);
    // Inverse of rank(): the element at the given lexicographic position.
    static Permutation unrank(int t, std::uint64_t rank);

    int degree() const { return degree_; }
    int operator[](int i) const { return images_[i]; }
    std::vector<int> images() const;

    Permutation inverse() const;
    int cycle_count() const;
    // t minus the number of cycles.
    int length() const { return degree_ - cycle_count(); }
    std::vector<int> cycle_type() const;
    int fixed_point_count() const;
    bool is_derangement() const { return fixed_point_count() == 0; }
    bool is_identity() const { return fixed_point_count() == degree_; }
    // Lexicographic rank of the one-line form among all of S_t.
    std::uint64_t rank() const;
    // Same permutation regarded as an element of S_t' for t' >= degree().
    Permutation extended(int t) const;

    std::string to_string() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend auto operator<=>(const Permutation &, const Permutation &) = default;

  private:
    int degree_ = 0;
    std::array<std::uint8_t, kMaxDegree> images_{};
};

// a∘b: apply b first, then a.
Permutation compose(const Permutation &a, const Permutation &b);
inline Permutation operator*(const Permutation &a, const Permutation &b) { return compose(a, b); }

// Length of a^{-1} b, the Cayley distance between a and b.
int cayley_distance(const Permutation &a, const Permutation &b);

class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int> &parts() const { return parts_; }
    int size() const;
    int rows() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[i]; }
    Partition conjugate() const;
    // Compact label such as "2111"; comma separated when a part exceeds 9.
    std::string label() const;
    // Order of the centralizer of an element with this cycle type.
    std::uint64_t centralizer_order() const;
    std::uint64_t class_size() const;
    // Content (column - row) of every cell, row by row.
    std::vector<int> contents() const;
    std::vector<int> hook_lengths() const;
    std::uint64_t hook_dimension() const;

    friend bool operator==(const Partition &, const Partition &) = default;
    friend auto operator<=>(const Partition &, const Partition &) = default;

  private:
    std::vector<int> parts_;
};

// All partitions of t in reverse lexicographic order, starting from (t).
std::vector<Partition> partitions(int t);
Partition parse_partition(const std::string &text);

using PermutationTuple = std::vector<Permutation>;

// True iff no point is fixed by every s_1^{-1} s_k.
bool is_complete_derangement(const PermutationTuple &tuple);

using Transposition = std::pair<int, int>;

// Factors (a_i, b_i) with a_i < b_i and b_i strictly increasing whose
// product s_{a_1 b_1} ∘ ... ∘ s_{a_k b_k} equals sigma.
std::vector<Transposition> jucys_murphy_decomposition(const Permutation &sigma);
Permutation product_of_transpositions(int t, const std::vector<Transposition> &factors);

struct CosetSplit {
    Permutation lambda;  // lies in S_l, the stabilizer of {l, ..., t-1}
    Permutation rho;
};

// sigma = lambda ∘ rho with |lambda' ∘ rho| = |lambda'| + |rho| for every lambda' in S_l.
CosetSplit minimal_coset_representative(const Permutation &sigma, int l);

}  // namespace gapcert
