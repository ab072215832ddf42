#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vsa/hypervector.hpp"
#include "vsa/models.hpp"

namespace vsa {

enum class Metric { Dot, Cosine };

Metric metric_from_name(std::string_view name);  // "dot" or "cosine"
std::string metric_name(Metric m);

double score(const HyperVector& a, const HyperVector& b, Metric m);

// Named symbol table with brute-force cleanup lookup. Entries keep insertion
// order; names are unique and all vectors share the book's dimension.
class Codebook {
public:
    explicit Codebook(BindingModel model) : model_(model) {}

    const BindingModel& model() const { return model_; }
    int dim() const { return model_.d; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // Throws std::invalid_argument on a duplicate name or a dimension mismatch.
    void insert(std::string name, HyperVector v);

    bool contains(const std::string& name) const { return by_name_.count(name) != 0; }
    const HyperVector& at(const std::string& name) const;
    const std::string& name_of(std::size_t index) const { return entries_[index].first; }
    const HyperVector& vector_of(std::size_t index) const { return entries_[index].second; }

private:
    BindingModel model_;
    std::vector<std::pair<std::string, HyperVector>> entries_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

struct NearestMatch {
    std::string name;
    std::size_t index = 0;
    double value = 0.0;
};

// Entry maximizing the metric under strict > comparison, so ties resolve to
// the lowest insertion index. Throws std::domain_error on an empty book.
NearestMatch codebook_nearest(const Codebook& cb, const HyperVector& query, Metric m);

// JSON form: { "model": string, "d": integer, "mu": number|null,
//              "entries": { name: [numbers...] } }
// with 17-significant-digit numbers. mu is null for every model but hlb.
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);

void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace vsa
