#pragma once

#include "examples.hpp"
#include "io.hpp"

#include <string>

namespace bdrep::testing {

inline std::string data_path(const std::string& name) { return std::string(BDREP_SOURCE_DIR) + "/data/" + name; }

/// Reference values computed by tests/oracles/oracle.py.
inline const json& oracle() {
    static const json j = read_json_file(std::string(BDREP_SOURCE_DIR) + "/tests/oracles/frozen.json");
    return j;
}

inline cplx oracle_cplx(const json& v) { return {v[0].get<double>(), v[1].get<double>()}; }

inline SystemRef load_inner(const std::string& name) {
    LoadedSystem L = system_from_json(read_json_file(data_path(name)));
    if (L.forms) return std::make_shared<const InnerSystem>(InnerSystem{L.system, *L.forms});
    return normalized_inner(L.system);
}

inline Word random_word(const Alphabet& A, int length, std::mt19937_64& rng) {
    Word w;
    while (static_cast<int>(w.size()) < length) {
        const Letter c = static_cast<Letter>(rng() % static_cast<std::uint64_t>(A.size()));
        if (!w.empty() && c == A.inverse(w.back())) continue;
        w.push_back(c);
    }
    return w;
}

inline MultVector seed_at(const SystemRef& sys, Letter a) { return letter_vector(sys, {{a, Vec::Ones(sys->system.dim(a))}}); }

}  // namespace bdrep::testing
