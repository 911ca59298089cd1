#include "gradiv/cli.hpp"

#include "gradiv/capacity.hpp"
#include "gradiv/continuous.hpp"
#include "gradiv/discrete.hpp"
#include "gradiv/error.hpp"
#include "gradiv/json_io.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

namespace gradiv::cli {

namespace {

using io::Json;

constexpr const char* kLimitVariable = "GD_EXHAUSTIVE_LIMIT";

struct Options {
    std::string f;
    std::string g;
    std::string dist;
    std::string masses;
    std::string capacity;
    std::string quad;
    std::string input;
    std::string kind;
    std::string method = "exhaustive";
    std::optional<double> tol;
    unsigned threads = 0;
    bool strict = false;
};

/// Raised for a -inf result under --strict.
struct StrictViolation : computation_error {
    using computation_error::computation_error;
};

class InputSet {
public:
    Json load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw invalid_input("cannot read " + path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const std::string text = buffer.str();
        contents_.push_back(text);
        return io::parse(text);
    }

    /// SHA-256 over each input's length and bytes, in load order.
    [[nodiscard]] std::string digest() const {
        EVP_MD_CTX* ctx = EVP_MD_CTX_new();
        EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
        for (const auto& c : contents_) {
            const std::string header = std::to_string(c.size()) + '\n';
            EVP_DigestUpdate(ctx, header.data(), header.size());
            EVP_DigestUpdate(ctx, c.data(), c.size());
        }
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx, md, &len);
        EVP_MD_CTX_free(ctx);
        std::ostringstream hex;
        hex << "sha256:";
        for (unsigned int i = 0; i < len; ++i) {
            hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
        }
        return hex.str();
    }

private:
    std::vector<std::string> contents_;
};

int exhaustive_limit() {
    const char* raw = std::getenv(kLimitVariable);
    if (raw == nullptr || *raw == '\0') {
        return CapacityEntropyOptions{}.exhaustive_limit;
    }
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (*end != '\0' || value < 1 || value > Capacity::kMaxGroundSize) {
        throw invalid_input(std::string(kLimitVariable) + " must be an integer in [1, " +
                            std::to_string(Capacity::kMaxGroundSize) + "]");
    }
    return static_cast<int>(value);
}

QuadratureSpec quadrature(const Options& opt, InputSet& inputs) {
    QuadratureSpec spec;
    if (!opt.quad.empty()) {
        spec = io::quadrature_from_json(inputs.load(opt.quad));
    }
    if (opt.tol) {
        spec.abs_tol = *opt.tol;
    }
    spec.validate();
    return spec;
}

Json checked(const DivergenceResult& r, const Options& opt) {
    if (opt.strict && r.negative_infinity) {
        throw StrictViolation("result is -infinity and --strict is set");
    }
    return io::to_json(r);
}

Json dispatch(const std::string& command, const Options& opt, InputSet& inputs) {
    if (command == "divergence discrete") {
        const auto f = io::grading_from_json(inputs.load(opt.f));
        const auto g = io::grading_from_json(inputs.load(opt.g));
        return checked(divergence_discrete(f, g), opt);
    }
    if (command == "divergence continuous" || command == "divergence symmetric") {
        const auto f = io::continuous_from_json(inputs.load(opt.f));
        const auto g = io::continuous_from_json(inputs.load(opt.g));
        const auto spec = quadrature(opt, inputs);
        return checked(command == "divergence continuous" ? divergence_continuous(f, g, spec)
                                                          : symmetric_divergence(f, g, spec),
                       opt);
    }
    if (command == "entropy shannon") {
        return checked(shannon_entropy(io::distribution_from_json(inputs.load(opt.dist))), opt);
    }
    if (command == "entropy relative") {
        const auto f = io::distribution_from_json(inputs.load(opt.f));
        const auto g = io::distribution_from_json(inputs.load(opt.g));
        return checked(relative_entropy(f, g), opt);
    }
    if (command == "entropy partition") {
        return checked(partition_entropy(io::masses_from_json(inputs.load(opt.masses))), opt);
    }
    if (command == "entropy corrected") {
        const auto f = io::continuous_from_json(inputs.load(opt.f));
        const auto spec = quadrature(opt, inputs);
        return checked(corrected_entropy(f, spec), opt);
    }
    if (command == "entropy capacity") {
        const auto mu = io::capacity_from_json(inputs.load(opt.capacity));
        CapacityEntropyOptions options;
        options.method = opt.method == "greedy" ? ChainMethod::greedy : ChainMethod::exhaustive;
        options.greedy_fallback = opt.method == "auto";
        options.exhaustive_limit = exhaustive_limit();
        options.threads = opt.threads;
        return io::to_json(capacity_entropy(mu, options));
    }
    if (command == "validate") {
        const Json doc = inputs.load(opt.input);
        const auto kind = opt.kind.empty() ? io::detect_kind(doc) : io::document_kind_from_string(opt.kind);
        return io::canonicalize(doc, kind);
    }
    throw invalid_input("unhandled command " + command);
}

std::string selected_command(const CLI::App& app) {
    std::string command;
    const CLI::App* node = &app;
    while (true) {
        const auto subs = node->get_subcommands();
        if (subs.empty()) {
            break;
        }
        node = subs.front();
        if (!command.empty()) {
            command += ' ';
        }
        command += node->get_name();
    }
    return command;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Relative divergence and entropy of grading functions", "gradiv"};
    app.require_subcommand(1, 1);

    auto strict = [&](CLI::App* leaf) {
        leaf->add_flag("--strict", opt.strict, "Exit with status 2 when the result is -inf");
    };
    auto quad = [&](CLI::App* leaf) {
        leaf->add_option("--quad", opt.quad, "Quadrature spec JSON file");
        leaf->add_option("--tol", opt.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    };
    auto pair = [&](CLI::App* leaf, const char* what) {
        leaf->add_option("--f", opt.f, std::string("F: ") + what)->required();
        leaf->add_option("--g", opt.g, std::string("G: ") + what)->required();
    };

    auto* divergence = app.add_subcommand("divergence", "Relative divergence D(F||G)");
    divergence->require_subcommand(1, 1);
    auto* d_discrete = divergence->add_subcommand("discrete", "Gradings on a finite ordered set");
    pair(d_discrete, "grading sample JSON");
    strict(d_discrete);
    auto* d_continuous = divergence->add_subcommand("continuous", "Gradings on an interval");
    pair(d_continuous, "continuous grading JSON");
    quad(d_continuous);
    strict(d_continuous);
    auto* d_symmetric = divergence->add_subcommand("symmetric", "D(F||G) + D(G||F)");
    pair(d_symmetric, "continuous grading JSON");
    quad(d_symmetric);
    strict(d_symmetric);

    auto* entropy = app.add_subcommand("entropy", "Entropy specializations");
    entropy->require_subcommand(1, 1);
    auto* e_shannon = entropy->add_subcommand("shannon", "Shannon entropy of a distribution");
    e_shannon->add_option("--dist", opt.dist, "Distribution JSON")->required();
    strict(e_shannon);
    auto* e_relative = entropy->add_subcommand("relative", "Relative entropy sum f ln(g/f)");
    pair(e_relative, "distribution JSON");
    strict(e_relative);
    auto* e_partition = entropy->add_subcommand("partition", "Partition entropy of cell masses");
    e_partition->add_option("--masses", opt.masses, "Masses JSON")->required();
    strict(e_partition);
    auto* e_capacity = entropy->add_subcommand("capacity", "Entropy of a capacity over maximal chains");
    e_capacity->add_option("--capacity", opt.capacity, "Capacity JSON")->required();
    e_capacity->add_option("--method", opt.method, "exhaustive, greedy or auto")
        ->check(CLI::IsMember({"exhaustive", "greedy", "auto"}));
    e_capacity->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    strict(e_capacity);
    auto* e_corrected = entropy->add_subcommand("corrected", "Corrected individual entropy");
    e_corrected->add_option("--f", opt.f, "Continuous grading JSON")->required();
    quad(e_corrected);
    strict(e_corrected);

    auto* validate = app.add_subcommand("validate", "Parse an input document and print it canonically");
    validate->add_option("--input", opt.input, "Document to validate")->required();
    validate->add_option("--kind", opt.kind, "grading, distribution, masses, capacity, continuous or quadrature");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "gradiv: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    const std::string command = selected_command(app);
    InputSet inputs;
    Json report;
    report["command"] = command;
    int status = kSuccess;
    Json result;
    Json error;
    try {
        result = dispatch(command, opt, inputs);
    } catch (const invalid_input& e) {
        status = kInvalidInput;
        error = {{"kind", "invalid_input"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        status = kComputationError;
        error = {{"kind", "computation_error"}, {"message", e.what()}};
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    report["inputs_digest"] = inputs.digest();
    if (status == kSuccess) {
        report["result"] = std::move(result);
    } else {
        err << "gradiv: " << command << ": " << error["message"].get<std::string>() << '\n';
        report["error"] = std::move(error);
    }
    report["elapsed_ms"] = elapsed;
    out << report.dump() << '\n';
    return status;
}

} // namespace gradiv::cli
