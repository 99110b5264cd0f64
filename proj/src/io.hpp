#pragma once

#include "induce.hpp"
#include "multrep.hpp"
#include "subgroups.hpp"
#include "vfgroup.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace bdrep {

using json = nlohmann::json;

/// Malformed input; the message names the offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedSystem {
    MatrixSystem system;
    std::optional<FormTuple> forms;  // unit convention
    std::optional<ExactSystem> exact;
};

/// Forms are stored either in the unit convention (average eigenvalue 1,
/// Σ_a tr B_a = Σ_a dim V_a) or, when "form_convention" is "trace", with
/// Σ_a tr B_a = 1; the latter is rescaled to the unit convention on load.
LoadedSystem system_from_json(const json& j);
json system_to_json(const MatrixSystem& S, const FormTuple* forms = nullptr, bool trace_convention = false);

/// Rescales forms to Σ_a tr B_a = Σ_a dim V_a.
FormTuple to_unit_convention(const MatrixSystem& S, const FormTuple& B);

/// Reorders the letters of a system to those of `target` (same names and
/// pairing, possibly another order).  Exact data is dropped.
LoadedSystem relabel(const LoadedSystem& L, const Alphabet& target);

MultVector vector_from_json(const json& j, const SystemRef& sys);
json vector_to_json(const MultVector& f);

/// Exact seeds from the same file layout; entries must be integers,
/// exactly representable reals or strings such as "1/3".
ExactVector exact_vector_from_json(const json& j, const ExactSystem& S);

/// {"quotient": {"order-data": [m1, ...] or [[table rows]], "images":
/// {letter: element}, "subgroup": [elements]}}; elements of a cyclic
/// product may be given as coordinate arrays.
QuotientSpec quotient_from_json(const json& j, const Alphabet& A);
json schreier_to_json(const SchreierData& S);

VFDatum vf_from_json(const json& j);
json vf_to_json(const VFDatum& D);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Locale-independent, 15 significant digits.
std::string csv_number(double x);

}  // namespace bdrep
