#include "gapcert/symmetric_group.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gapcert {

static Permutation class_representative(const Partition &type) {
    int t = type.size();
    std::vector<int> images(t);
    int start = 0;
    for (int len : type.parts()) {
        for (int k = 0; k < len; ++k) {
            images[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    return Permutation(images);
}

std::vector<ConjugacyClass> conjugacy_classes(int t) {
    if (t < 1 || t > kMaxDegree) {
        throw std::invalid_argument("conjugacy_classes: degree out of range");
    }
    std::vector<ConjugacyClass> out;
    for (const auto &p : partitions(t)) {
        ConjugacyClass c;
        c.cycle_type = p;
        c.centralizer = p.centralizer_order();
        c.size = factorial(t) / c.centralizer;
        c.representative = class_representative(p);
        c.representative_index = static_cast<std::size_t>(c.representative.rank());
        out.push_back(c);
    }
    return out;
}

SymmetricGroup::SymmetricGroup(int t) : t_(t) {
    if (t < 1 || t > kMaxEnumerationDegree) {
        throw std::invalid_argument("SymmetricGroup: full enumeration requires 1 <= t <= 8");
    }
    classes_ = conjugacy_classes(t);
    std::map<std::vector<int>, std::size_t> by_type;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        by_type[classes_[c].cycle_type.parts()] = c;
    }
    std::size_t n = factorial(t);
    elements_.reserve(n);
    length_.resize(n);
    inverse_.resize(n);
    class_of_.resize(n);
    derangement_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        elements_.push_back(Permutation::unrank(t, i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto &p = elements_[i];
        length_[i] = p.length();
        inverse_[i] = static_cast<std::size_t>(p.inverse().rank());
        class_of_[i] = by_type.at(p.cycle_type());
        derangement_[i] = p.is_derangement();
    }
    if (t <= 6) {
        table_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                table_[i * n + j] = static_cast<std::uint16_t>(compose(elements_[i], elements_[j]).rank());
            }
        }
    }
}

std::size_t SymmetricGroup::product(std::size_t i, std::size_t j) const {
    if (!table_.empty()) {
        return table_[i * elements_.size() + j];
    }
    return static_cast<std::size_t>(compose(elements_[i], elements_[j]).rank());
}

std::size_t SymmetricGroup::class_index(const Partition &cycle_type) const {
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (classes_[c].cycle_type == cycle_type) {
            return c;
        }
    }
    throw std::invalid_argument("cycle type is not a partition of the group degree");
}

std::vector<std::size_t> SymmetricGroup::derangements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < order(); ++i) {
        if (derangement_[i]) {
            out.push_back(i);
        }
    }
    return out;
}

const SymmetricGroup &symmetric_group(int t) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<SymmetricGroup>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(t);
    if (it == cache.end()) {
        it = cache.emplace(t, std::make_unique<SymmetricGroup>(t)).first;
    }
    return *it->second;
}

}  // namespace gapcert
