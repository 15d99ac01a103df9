#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gapcert/permutation.hpp"

namespace gapcert {

struct ConjugacyClass {
    Partition cycle_type;
    std::uint64_t size = 0;
    Permutation representative;
    std::size_t representative_index = 0;
    std::uint64_t centralizer = 0;
};

// Classes of S_t indexed in the order of partitions(t); no enumeration needed.
std::vector<ConjugacyClass> conjugacy_classes(int t);

// Fully enumerated S_t for t <= 8. Element i is the permutation of lexicographic rank i.
class SymmetricGroup {
  public:
    explicit SymmetricGroup(int t);

    int degree() const { return t_; }
    std::size_t order() const { return elements_.size(); }
    const Permutation &element(std::size_t i) const { return elements_[i]; }
    std::size_t index_of(const Permutation &p) const { return static_cast<std::size_t>(p.rank()); }

    int length(std::size_t i) const { return length_[i]; }
    std::size_t inverse(std::size_t i) const { return inverse_[i]; }
    std::size_t class_of(std::size_t i) const { return class_of_[i]; }
    bool is_derangement(std::size_t i) const { return derangement_[i]; }
    std::size_t identity_index() const { return 0; }

    // Index of element(i) ∘ element(j).
    std::size_t product(std::size_t i, std::size_t j) const;
    // Index of element(i)^{-1} ∘ element(j).
    std::size_t relative(std::size_t i, std::size_t j) const { return product(inverse_[i], j); }

    const std::vector<ConjugacyClass> &classes() const { return classes_; }
    std::size_t class_count() const { return classes_.size(); }
    std::size_t class_index(const Partition &cycle_type) const;
    std::vector<std::size_t> derangements() const;

  private:
    int t_;
    std::vector<Permutation> elements_;
    std::vector<int> length_;
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> class_of_;
    std::vector<bool> derangement_;
    std::vector<ConjugacyClass> classes_;
    std::vector<std::uint16_t> table_;  // multiplication table for t <= 6
};

// Shared immutable instance per degree.
const SymmetricGroup &symmetric_group(int t);

}  // namespace gapcert
