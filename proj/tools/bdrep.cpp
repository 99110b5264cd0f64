// Command-line front end; talks to the library only through the C API.
#include <CLI11.hpp>

#include "bdrep/bdrep.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct RunConfig {
    double tolerance = 1e-9;
    unsigned long long cap = 10'000'000ULL;
    unsigned long long seed = 20240601ULL;
    int threads = 1;
    int trials = 50;
    std::string backend = "fast";
    std::string output;
};

struct SystemDeleter {
    void operator()(bdrep_system* s) const { bdrep_system_free(s); }
};
struct VectorDeleter {
    void operator()(bdrep_vector* v) const { bdrep_vector_free(v); }
};
struct StringDeleter {
    void operator()(char* s) const { bdrep_string_free(s); }
};
using SystemPtr = std::unique_ptr<bdrep_system, SystemDeleter>;
using VectorPtr = std::unique_ptr<bdrep_vector, VectorDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Failure carrying the library status, which doubles as the exit code.
struct Failed {
    int status;
};

void check(bdrep_status s) {
    if (s != BDREP_OK) {
        std::cerr << "error: " << bdrep_last_error() << "\n";
        throw Failed{static_cast<int>(s)};
    }
}

bdrep_options options(const RunConfig& c) {
    bdrep_options o;
    bdrep_options_init(&o);
    o.tolerance = c.tolerance;
    o.cap = c.cap;
    o.seed = c.seed;
    o.threads = c.threads;
    o.trials = c.trials;
    if (c.backend == "fast")
        o.backend = BDREP_BACKEND_FAST;
    else if (c.backend == "brute")
        o.backend = BDREP_BACKEND_BRUTE;
    else if (c.backend == "both")
        o.backend = BDREP_BACKEND_BOTH;
    else
        o.backend = BDREP_BACKEND_EXACT;
    return o;
}

SystemPtr load_system(const std::string& path) {
    bdrep_system* s = nullptr;
    check(bdrep_system_load(path.c_str(), &s));
    return SystemPtr(s);
}

VectorPtr load_vector(const bdrep_system* sys, const std::string& path) {
    bdrep_vector* v = nullptr;
    check(bdrep_vector_load(sys, path.c_str(), &v));
    return VectorPtr(v);
}

// The main artifact goes to --output or stdout; reports go to stdout when
// the artifact has a file, otherwise to stderr.
void emit(const RunConfig& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << c.output << "\n";
        throw Failed{1};
    }
    out << text;
}

std::ostream& report_stream(const RunConfig& c) { return c.output.empty() ? std::cerr : std::cout; }

std::string take(char* s) {
    StringPtr p(s);
    return p ? std::string(p.get()) : std::string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplicative boundary representations of free groups"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--tolerance", cfg.tolerance, "Residual and check tolerance")->check(CLI::PositiveNumber);
    app.add_option("--cap", cfg.cap, "Largest sphere a computation may enumerate")->check(CLI::Range(1000ULL, ~0ULL));
    app.add_option("--seed", cfg.seed, "Seed for randomized checks");
    app.add_option("--threads", cfg.threads, "Threads for brute-force sums")->check(CLI::Range(1, 256));
    app.add_option("--trials", cfg.trials, "Randomized trials per check")->check(CLI::Range(1, 100000));
    app.add_option("--backend", cfg.backend, "Coefficient backend")
        ->check(CLI::IsMember({"fast", "brute", "both", "exact"}));
    app.add_option("--output", cfg.output, "Write the main result to this file");

    std::string system_path, vector_path, quotient_path, layout_path, datum = "PSL2Z", word;
    std::vector<std::string> words;
    int radius = 3, max_power = 8;

    auto* normalize = app.add_subcommand("normalize", "Scale a system to spectral radius 1 and attach forms");
    normalize->add_option("system", system_path)->required();

    auto* decompose = app.add_subcommand("decompose", "Split a system into irreducible components");
    decompose->add_option("system", system_path)->required();

    auto* coefficients = app.add_subcommand("coefficients", "Matrix coefficients <pi(x)f, f> as CSV");
    coefficients->add_option("system", system_path)->required();
    coefficients->add_option("vector", vector_path)->required();
    coefficients->add_option("words", words, "Group elements, e.g. e a bA");

    auto* induce = app.add_subcommand("induce", "Induce a system from a finite-index subgroup");
    induce->add_option("system", system_path, "System over the Schreier generators")->required();
    induce->add_option("quotient", quotient_path, "Quotient file")->required();
    induce->add_option("--layout", layout_path, "Write the block layout as JSON");

    auto* vf = app.add_subcommand("vf-induce", "Induce to a virtually free group and check coefficients");
    vf->add_option("system", system_path, "System over the free basis")->required();
    vf->add_option("--datum", datum, "Datum file, or PSL2Z for the built-in");

    auto* herz = app.add_subcommand("herz", "Herz majorization on a word ball");
    herz->add_option("system", system_path)->required();
    herz->add_option("vector", vector_path)->required();
    herz->add_option("--radius", radius)->check(CLI::Range(0, 64));

    auto* demo = app.add_subcommand("demo-no-hc", "phi(w^n) for a fixed measure");
    demo->add_option("system", system_path, "System (rank-2 standard alphabet if omitted)");
    demo->add_option("vector", vector_path, "Vector whose spectral measure is used (uniform measure if omitted)");
    demo->add_option("--word", word)->required();
    demo->add_option("--max-power", max_power)->check(CLI::Range(1, 64));

    auto* selftest = app.add_subcommand("selftest", "Built-in desk-scale checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const bdrep_options opts = options(cfg);
    try {
        if (*normalize) {
            auto sys = load_system(system_path);
            bdrep_system* out = nullptr;
            double rho = 0, residual = 0;
            char* rep = nullptr;
            check(bdrep_normalize(sys.get(), &opts, &out, &rho, &residual, &rep));
            SystemPtr res(out);
            const std::string report = take(rep);
            char* text = nullptr;
            check(bdrep_system_to_json(res.get(), &text));
            emit(cfg, take(text));
            report_stream(cfg) << report;
        } else if (*decompose) {
            auto sys = load_system(system_path);
            char* rep = nullptr;
            const bdrep_status s = bdrep_decompose(sys.get(), &opts, &rep);
            if (rep) emit(cfg, take(rep));
            check(s);
        } else if (*coefficients) {
            auto sys = load_system(system_path);
            auto vec = load_vector(sys.get(), vector_path);
            std::vector<const char*> ptrs;
            for (const auto& w : words) ptrs.push_back(w.c_str());
            char* csv = nullptr;
            check(bdrep_coefficients_csv(sys.get(), vec.get(), ptrs.data(), ptrs.size(), &opts, &csv));
            emit(cfg, take(csv));
        } else if (*induce) {
            auto sys = load_system(system_path);
            bdrep_system* out = nullptr;
            char* layout = nullptr;
            char* rep = nullptr;
            const bdrep_status s = bdrep_induce(sys.get(), quotient_path.c_str(), &opts, &out, &layout, &rep);
            SystemPtr res(out);
            const std::string layout_text = take(layout), report = take(rep);
            if (res) {
                char* text = nullptr;
                check(bdrep_system_to_json(res.get(), &text));
                emit(cfg, take(text));
            }
            if (!layout_path.empty() && !layout_text.empty()) {
                std::ofstream(layout_path, std::ios::binary) << layout_text;
            }
            report_stream(cfg) << report;
            check(s);
        } else if (*vf) {
            auto sys = load_system(system_path);
            char* rep = nullptr;
            const bdrep_status s = bdrep_vf_induce(sys.get(), datum.c_str(), &opts, &rep);
            if (rep) emit(cfg, take(rep));
            check(s);
        } else if (*herz) {
            auto sys = load_system(system_path);
            auto vec = load_vector(sys.get(), vector_path);
            char* csv = nullptr;
            int failures = 0;
            const bdrep_status s = bdrep_herz_csv(sys.get(), vec.get(), radius, &opts, &csv, &failures);
            if (csv) emit(cfg, take(csv));
            check(s);
        } else if (*demo) {
            SystemPtr sys;
            VectorPtr vec;
            if (!system_path.empty()) sys = load_system(system_path);
            if (!vector_path.empty()) vec = load_vector(sys.get(), vector_path);
            char* csv = nullptr;
            check(bdrep_demo_no_hc_csv(sys.get(), vec.get(), word.c_str(), max_power, &opts, &csv));
            emit(cfg, take(csv));
        } else if (*selftest) {
            char* rep = nullptr;
            const bdrep_status s = bdrep_selftest(&opts, &rep);
            if (rep) emit(cfg, take(rep));
            check(s);
        }
    } catch (const Failed& f) {
        return f.status;
    }
    return 0;
}
