#include "gradiv/json_io.hpp"

#include "gradiv/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

namespace gradiv::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw invalid_input(what); }

const Json& field(const Json& doc, const char* name) {
    if (!doc.is_object()) {
        fail("expected a JSON object");
    }
    auto it = doc.find(name);
    if (it == doc.end()) {
        fail(std::string("missing field \"") + name + "\"");
    }
    return *it;
}

double number(const Json& v, const std::string& what) {
    if (!v.is_number()) {
        fail(what + " must be a number");
    }
    return v.get<double>();
}

int integer(const Json& v, const std::string& what) {
    if (!v.is_number_integer()) {
        fail(what + " must be an integer");
    }
    const auto i = v.get<std::int64_t>();
    if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
        fail(what + " is out of range");
    }
    return static_cast<int>(i);
}

std::vector<double> number_array(const Json& v, const std::string& what) {
    if (!v.is_array()) {
        fail(what + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        out.push_back(number(e, what + " entry"));
    }
    return out;
}

void reject_unknown(const Json& doc, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : doc.items()) {
        if (std::none_of(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; })) {
            fail("unexpected field \"" + key + "\"");
        }
    }
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

SubsetMask parse_subset_key(const std::string& key, int n) {
    SubsetMask mask = 0;
    if (trim(key).empty()) {
        return mask;
    }
    std::string_view rest = key;
    while (true) {
        const auto comma = rest.find(',');
        const std::string token = trim(rest.substr(0, comma));
        int element = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), element);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            fail("bad subset key \"" + key + "\"");
        }
        if (element < 1 || element > n) {
            fail("subset key \"" + key + "\" names an element outside 1.." + std::to_string(n));
        }
        const SubsetMask bit = SubsetMask{1} << (element - 1);
        if ((mask & bit) != 0) {
            fail("subset key \"" + key + "\" repeats an element");
        }
        mask |= bit;
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    return mask;
}

} // namespace

std::string to_string(DocumentKind kind) {
    switch (kind) {
    case DocumentKind::grading: return "grading";
    case DocumentKind::distribution: return "distribution";
    case DocumentKind::masses: return "masses";
    case DocumentKind::capacity: return "capacity";
    case DocumentKind::continuous: return "continuous";
    case DocumentKind::quadrature: return "quadrature";
    }
    return "unknown";
}

DocumentKind document_kind_from_string(const std::string& name) {
    for (auto kind : {DocumentKind::grading, DocumentKind::distribution, DocumentKind::masses,
                      DocumentKind::capacity, DocumentKind::continuous, DocumentKind::quadrature}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    fail("unknown document kind \"" + name + "\"");
}

DocumentKind detect_kind(const Json& doc) {
    if (!doc.is_object()) {
        fail("expected a JSON object");
    }
    if (doc.contains("grades")) return DocumentKind::grading;
    if (doc.contains("weights")) return DocumentKind::distribution;
    if (doc.contains("masses")) return DocumentKind::masses;
    if (doc.contains("ground_size")) return DocumentKind::capacity;
    if (doc.contains("family")) return DocumentKind::continuous;
    if (doc.contains("abs_tol") || doc.contains("rel_tol") || doc.contains("max_depth") ||
        doc.contains("endpoint_margin")) {
        return DocumentKind::quadrature;
    }
    fail("cannot tell which schema this document follows");
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

GradingSample grading_from_json(const Json& doc) {
    reject_unknown(doc, {"grades", "labels"});
    auto grades = number_array(field(doc, "grades"), "grades");
    std::optional<std::vector<std::string>> labels;
    if (auto it = doc.find("labels"); it != doc.end()) {
        if (!it->is_array()) {
            fail("labels must be an array of strings");
        }
        labels.emplace();
        for (const auto& l : *it) {
            if (!l.is_string()) {
                fail("labels must be an array of strings");
            }
            labels->push_back(l.get<std::string>());
        }
    }
    return GradingSample(std::move(grades), std::move(labels));
}

Json to_json(const GradingSample& sample) {
    Json doc;
    doc["grades"] = std::vector<double>(sample.grades().begin(), sample.grades().end());
    if (sample.labels()) {
        doc["labels"] = *sample.labels();
    }
    return doc;
}

ProbabilityVector distribution_from_json(const Json& doc) {
    reject_unknown(doc, {"weights"});
    return ProbabilityVector(number_array(field(doc, "weights"), "weights"));
}

Json to_json(const ProbabilityVector& dist) {
    Json doc;
    doc["weights"] = std::vector<double>(dist.weights().begin(), dist.weights().end());
    return doc;
}

std::vector<double> masses_from_json(const Json& doc) {
    reject_unknown(doc, {"masses"});
    auto masses = number_array(field(doc, "masses"), "masses");
    for (double m : masses) {
        if (!std::isfinite(m) || m < 0.0) {
            fail("masses must be finite and >= 0");
        }
    }
    return masses;
}

Json masses_to_json(const std::vector<double>& masses) {
    Json doc;
    doc["masses"] = masses;
    return doc;
}

std::string subset_key(SubsetMask subset) {
    std::string key;
    for (int e = 0; subset != 0; ++e, subset >>= 1) {
        if ((subset & 1u) != 0) {
            if (!key.empty()) {
                key += ',';
            }
            key += std::to_string(e + 1);
        }
    }
    return key;
}

Capacity capacity_from_json(const Json& doc) {
    reject_unknown(doc, {"ground_size", "values"});
    const int n = integer(field(doc, "ground_size"), "ground_size");
    if (n < 1 || n > Capacity::kMaxGroundSize) {
        fail("ground_size must be in [1, " + std::to_string(Capacity::kMaxGroundSize) + "]");
    }
    const Json& values = field(doc, "values");
    if (!values.is_object()) {
        fail("values must be an object keyed by subsets");
    }
    const std::size_t count = std::size_t{1} << n;
    std::vector<double> table(count, 0.0);
    std::vector<bool> seen(count, false);
    for (const auto& [key, value] : values.items()) {
        const SubsetMask mask = parse_subset_key(key, n);
        if (seen[mask]) {
            fail("subset {" + subset_key(mask) + "} is given more than once");
        }
        seen[mask] = true;
        table[mask] = number(value, "capacity value for \"" + key + "\"");
    }
    for (std::size_t s = 0; s < count; ++s) {
        if (!seen[s]) {
            fail("capacity value missing for subset {" + subset_key(static_cast<SubsetMask>(s)) + "}");
        }
    }
    return Capacity(n, std::move(table));
}

Json to_json(const Capacity& mu) {
    Json doc;
    doc["ground_size"] = mu.ground_size();
    Json values = Json::object();
    const auto table = mu.values();
    for (std::size_t s = 0; s < table.size(); ++s) {
        values[subset_key(static_cast<SubsetMask>(s))] = table[s];
    }
    doc["values"] = std::move(values);
    return doc;
}

ContinuousGrading continuous_from_json(const Json& doc) {
    reject_unknown(doc, {"family", "params", "support"});
    const Json& fam = field(doc, "family");
    if (!fam.is_string()) {
        fail("family must be a string");
    }
    const std::string name = fam.get<std::string>();
    const Json params = doc.contains("params") ? doc.at("params") : Json::object();
    if (!params.is_object()) {
        fail("params must be an object");
    }
    const auto support = number_array(field(doc, "support"), "support");
    if (support.size() != 2) {
        fail("support must be [a, b]");
    }
    const double a = support[0];
    const double b = support[1];

    auto param = [&](const char* key) { return number(field(params, key), std::string("params.") + key); };
    if (name == "uniform") {
        reject_unknown(params, {});
        return ContinuousGrading(family::Uniform{}, a, b);
    }
    if (name == "triangular") {
        reject_unknown(params, {"mode"});
        return ContinuousGrading(family::Triangular{param("mode")}, a, b);
    }
    if (name == "beta") {
        reject_unknown(params, {"alpha", "beta"});
        return ContinuousGrading(family::Beta{param("alpha"), param("beta")}, a, b);
    }
    if (name == "truncated_normal") {
        reject_unknown(params, {"mu", "sigma"});
        return ContinuousGrading(family::TruncatedNormal{param("mu"), param("sigma")}, a, b);
    }
    if (name == "power") {
        reject_unknown(params, {"p"});
        return ContinuousGrading(family::Power{param("p")}, a, b);
    }
    if (name == "piecewise_linear_cdf") {
        reject_unknown(params, {"knots"});
        const Json& knots = field(params, "knots");
        if (!knots.is_array()) {
            fail("params.knots must be an array of [x, F(x)] pairs");
        }
        std::vector<std::pair<double, double>> pts;
        for (const auto& k : knots) {
            const auto xy = number_array(k, "knot");
            if (xy.size() != 2) {
                fail("each knot must be [x, F(x)]");
            }
            pts.emplace_back(xy[0], xy[1]);
        }
        return ContinuousGrading(family::PiecewiseLinearCdf{std::move(pts)}, a, b);
    }
    fail("unknown family \"" + name + "\"");
}

Json to_json(const ContinuousGrading& grading) {
    Json doc;
    doc["family"] = grading.family_name();
    Json params = Json::object();
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, family::Triangular>) {
                params["mode"] = p.mode;
            } else if constexpr (std::is_same_v<P, family::Beta>) {
                params["alpha"] = p.alpha;
                params["beta"] = p.beta;
            } else if constexpr (std::is_same_v<P, family::TruncatedNormal>) {
                params["mu"] = p.mu;
                params["sigma"] = p.sigma;
            } else if constexpr (std::is_same_v<P, family::Power>) {
                params["p"] = p.p;
            } else if constexpr (std::is_same_v<P, family::PiecewiseLinearCdf>) {
                Json knots = Json::array();
                for (const auto& [x, y] : p.knots) {
                    knots.push_back(Json::array({x, y}));
                }
                params["knots"] = std::move(knots);
            }
        },
        grading.params());
    doc["params"] = std::move(params);
    doc["support"] = Json::array({grading.lower(), grading.upper()});
    return doc;
}

QuadratureSpec quadrature_from_json(const Json& doc) {
    reject_unknown(doc, {"abs_tol", "rel_tol", "max_depth", "endpoint_margin"});
    QuadratureSpec spec;
    if (doc.contains("abs_tol")) spec.abs_tol = number(doc.at("abs_tol"), "abs_tol");
    if (doc.contains("rel_tol")) spec.rel_tol = number(doc.at("rel_tol"), "rel_tol");
    if (doc.contains("max_depth")) spec.max_depth = integer(doc.at("max_depth"), "max_depth");
    if (doc.contains("endpoint_margin")) {
        spec.endpoint_margin = number(doc.at("endpoint_margin"), "endpoint_margin");
    }
    spec.validate();
    return spec;
}

Json to_json(const QuadratureSpec& spec) {
    Json doc;
    doc["abs_tol"] = spec.abs_tol;
    doc["rel_tol"] = spec.rel_tol;
    doc["max_depth"] = spec.max_depth;
    doc["endpoint_margin"] = spec.endpoint_margin;
    return doc;
}

Json to_json(const DivergenceResult& result) {
    Json doc;
    if (result.negative_infinity) {
        doc["value"] = "-inf";
    } else {
        doc["value"] = result.value;
    }
    doc["terms_used"] = result.terms_used;
    doc["dropped_mass"] = result.dropped_mass;
    doc["error_estimate"] = result.error_estimate;
    doc["flags"] = result.flag_names();
    return doc;
}

Json to_json(const CapacityEntropyReport& report) {
    Json doc;
    doc["entropy"] = report.entropy;
    doc["argmin_chain"] =
        std::vector<int>(report.argmin_chain.order().begin(), report.argmin_chain.order().end());
    doc["chains_examined"] = report.chains_examined;
    doc["method"] = to_string(report.method);
    return doc;
}

Json canonicalize(const Json& doc, DocumentKind kind) {
    switch (kind) {
    case DocumentKind::grading: return to_json(grading_from_json(doc));
    case DocumentKind::distribution: return to_json(distribution_from_json(doc));
    case DocumentKind::masses: return masses_to_json(masses_from_json(doc));
    case DocumentKind::capacity: return to_json(capacity_from_json(doc));
    case DocumentKind::continuous: return to_json(continuous_from_json(doc));
    case DocumentKind::quadrature: return to_json(quadrature_from_json(doc));
    }
    fail("unknown document kind");
}

} // namespace gradiv::io
