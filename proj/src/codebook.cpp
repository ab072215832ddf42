#include "vsa/codebook.hpp"

#include <stdexcept>

#include "json.hpp"
#include "vsa/io.hpp"

namespace vsa {

Metric metric_from_name(std::string_view name) {
    if (name == "dot") return Metric::Dot;
    if (name == "cosine") return Metric::Cosine;
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

std::string metric_name(Metric m) { return m == Metric::Dot ? "dot" : "cosine"; }

double score(const HyperVector& a, const HyperVector& b, Metric m) {
    return m == Metric::Dot ? dot(a, b) : cosine(a, b);
}

void Codebook::insert(std::string name, HyperVector v) {
    if (by_name_.count(name)) {
        throw std::invalid_argument("duplicate codebook name: " + name);
    }
    if (v.dim() != static_cast<std::size_t>(model_.d)) {
        throw std::invalid_argument("codebook dimension is " + std::to_string(model_.d) +
                                    ", vector has " + std::to_string(v.dim()));
    }
    by_name_.emplace(name, entries_.size());
    entries_.emplace_back(std::move(name), std::move(v));
}

const HyperVector& Codebook::at(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw std::out_of_range("no codebook entry: " + name);
    return entries_[it->second].second;
}

NearestMatch codebook_nearest(const Codebook& cb, const HyperVector& query, Metric m) {
    if (cb.empty()) throw std::domain_error("codebook is empty");
    NearestMatch best{cb.name_of(0), 0, score(query, cb.vector_of(0), m)};
    for (std::size_t i = 1; i < cb.size(); ++i) {
        const double v = score(query, cb.vector_of(i), m);
        // strict >: equal scores keep the earlier entry
        if (v > best.value) best = {cb.name_of(i), i, v};
    }
    return best;
}

std::string codebook_to_json(const Codebook& cb) {
    const BindingModel& model = cb.model();
    std::string out = "{\n";
    out += "  \"model\": \"" + model_name(model.kind) + "\",\n";
    out += "  \"d\": " + std::to_string(model.d) + ",\n";
    out += "  \"mu\": ";
    out += (model.kind == ModelKind::HLB) ? format_double(model.mu) : std::string("null");
    out += ",\n  \"entries\": {";
    for (std::size_t i = 0; i < cb.size(); ++i) {
        out += (i == 0) ? "\n" : ",\n";
        out += "    \"" + cb.name_of(i) + "\": [";
        const HyperVector& v = cb.vector_of(i);
        for (std::size_t k = 0; k < v.dim(); ++k) {
            if (k) out += ", ";
            out += format_double(v[k]);
        }
        out += "]";
    }
    out += cb.size() ? "\n  }\n}\n" : "}\n}\n";
    return out;
}

Codebook codebook_from_json(const std::string& text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
    const ModelKind kind = model_from_name(j.at("model").get<std::string>());
    const int d = j.at("d").get<int>();
    const double mu = j.at("mu").is_null() ? 1.0 : j.at("mu").get<double>();
    Codebook cb(make_model(kind, d, mu));
    for (const auto& [name, arr] : j.at("entries").items()) {
        std::vector<double> data;
        data.reserve(arr.size());
        for (const auto& x : arr) data.push_back(x.get<double>());
        cb.insert(name, HyperVector(std::move(data)));
    }
    return cb;
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
    write_text_file(path, codebook_to_json(cb));
}

Codebook load_codebook(const std::filesystem::path& path) {
    return codebook_from_json(read_text_file(path));
}

}  // namespace vsa
