#pragma once

#include "kohnspec/hearing.hpp"
#include "kohnspec/spectrum.hpp"

#include "json.hpp"

#include <string>

namespace kohnspec {

// Order-preserving JSON value; all emitters below use it so that identical
// inputs dump to byte-identical text (fixed key order, shortest round-trip
// float formatting, two-space indentation via dump_json).
using OrderedJson = nlohmann::ordered_json;

// dump(2) plus a trailing newline — the single serialization point for files.
std::string dump_json(const OrderedJson& j);

// SpectrumTable codec.
//   { "structure": "standard"|"rossi",
//     "t": null | {"re": double, "im": double, "re_exact": str, "im_exact": str},
//     "group": "<spec>", "max_degree": K, "scaling": "raw"|"unscaled"|"halved",
//     "merge_tolerance": "p/q"        (rossi only),
//     "selected": [int...]            (selected standard tables only),
//     "entries": [ { "eigenvalue": int|double, "multiplicity": int,
//                    "enclosure": {"lo": "p/q", "hi": "p/q"}   (rossi only),
//                    "complete": bool (standard) / "merged": bool (rossi),
//                    "sources": [ {"p","q","copies"} | {"degree","chain","copies"} ] } ] }
// Standard eigenvalue keys are exact JSON integers; Rossi keys are enclosure
// midpoints as doubles, with the certified enclosure carried exactly as
// num/den strings, so parsing reconstructs the identical in-memory value.
OrderedJson spectrum_to_json(const SpectrumTable& S);
SpectrumTable spectrum_from_json(const OrderedJson& j);  // throws std::invalid_argument
SpectrumTable spectrum_from_json_text(const std::string& text);

// Plot-ready CSV: header line, one row per entry.  Columns
//   eigenvalue,multiplicity,lo,hi,merged,complete,sources
// with doubles in %.17g, exact bounds as num/den strings, and sources packed
// as 'p:q*copies' / 'degree:chain*copies' items joined by '|' (comma-free).
std::string spectrum_to_csv(const SpectrumTable& S);

// HearingReport with the full estimate trace; the calibrated constant is
// carried exactly.
OrderedJson hearing_to_json(const HearingReport& r);

// Parity verdict plus the evidence actually computed: gap bound/certificate
// and window minimum for even orders, the decaying window-minima ladder for
// odd orders.  Enclosure endpoints exact, display values double.
OrderedJson embeddability_to_json(const EmbeddabilityReport& r);

// Structural equality, exact on every rational field — the round-trip
// property "emitted JSON re-parses to an identical in-memory value".
bool equal(const SpectrumSource& a, const SpectrumSource& b);
bool equal(const SpectrumEntry& a, const SpectrumEntry& b);
bool equal(const SpectrumTable& a, const SpectrumTable& b);

}  // namespace kohnspec
