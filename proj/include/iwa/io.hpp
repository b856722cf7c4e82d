#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "iwa/group_ring.hpp"
#include "iwa/structure.hpp"

namespace iwa {

using nlohmann::json;

/// Series file: {"p", "x_trunc", "prec", "coeffs": [scalar literals],
/// "tail": "zero"|"log_bounded"|"unknown", "tail_offset"}. The tail fields
/// are optional on input (default "zero": a file is a polynomial unless it
/// says otherwise).
json series_to_json(const TruncatedSeries& f);
TruncatedSeries series_from_json(const json& j);

/// Group-ring file: {"p", "level", "coeffs": {"a": scalar literal}}.
/// "p" may be omitted when a default is supplied.
json group_to_json(const GroupRingElem& g);
GroupRingElem group_from_json(const json& j, long default_p, long default_prec);

/// Matrix file: {"mode": "factored"|"numeric", "entries": [[...]]}.
/// Factored entries are objects {"pi:1:0": 1, ...} ({} = unit, null = zero);
/// numeric entries are series objects.
struct MatrixFile {
    enum class Mode { Factored, Numeric };
    Mode mode = Mode::Factored;
    FactoredMatrix factored;
    SeriesMatrix numeric;
};
MatrixFile matrix_from_json(const json& j);
json matrix_to_json(const FactoredMatrix& a);

/// Module spec file: {"p", "u", "K_degree", "phi", "N", "weights", "flags"};
/// matrix entries are scalar literals (base field) or arrays of literals
/// (coefficients over the inert extension of degree K_degree).
FilteredPhiNModule module_from_json(const json& j, long default_prec = 40);

/// Read and parse, rethrowing malformed input as domain_error with the
/// path and the parser's position diagnostics.
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// One header row, tab-separated cells.
std::string tsv_table(const std::vector<std::vector<std::string>>& rows);

/// Chain table: one row per divisor, one column per factor symbol that
/// occurs anywhere in the chain.
std::string chain_tsv(const DivisorChain& chain);
/// Single factored element as a one-row table under the given label.
std::string factored_tsv(const FactoredElement& f, const std::string& label);

}  // namespace iwa
