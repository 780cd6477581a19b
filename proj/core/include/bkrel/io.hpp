#pragma once

#include <memory>
#include <string>

#include "bkrel/lattice.hpp"
#include "bkrel/morphism.hpp"
#include "bkrel/relation.hpp"
#include "bkrel/search.hpp"

namespace bkrel {

struct NamedRelation {
  std::string name;
  Relation relation;
};

/// Whole file as a string; IoError when unreadable.
std::string read_text_file(const std::string& path);

// ---------------------------------------------------------------------------
// Relation files.  CSV layout: cell (0,0) is the relation name, the rest of
// row 0 the target labels, the rest of column 0 the source labels, body cells
// decimals (9 digits on write) or finite-carrier element names.  The JSON
// form mirrors the same fields.  Fields are trimmed; quoting is not
// supported, so names and labels must avoid commas and quotes.

std::string relation_to_csv(const std::string& name, const Relation& r);
NamedRelation relation_from_csv(const std::string& text,
                                std::shared_ptr<const Lattice> lattice);

std::string relation_to_json(const std::string& name, const Relation& r);
NamedRelation relation_from_json(const std::string& text,
                                 std::shared_ptr<const Lattice> lattice);

/// Dispatches on the ".json" suffix; anything else reads as CSV.
NamedRelation load_relation_file(const std::string& path,
                                 std::shared_ptr<const Lattice> lattice);

// ---------------------------------------------------------------------------
// Finite-lattice files: { "names": [...], "leq": [[bool]], "tensor": [[idx]],
// "residuum": [[idx]] (optional), "bottom": idx, "top": idx }.

/// Schema/shape decoding only; no lattice semantics checked.
Lattice::FiniteSpec finite_spec_from_json(const std::string& text);

/// Decode, construct, then run the full axiom suite; a table failing any
/// check is rejected with the failing identities in the message.
std::shared_ptr<const Lattice> lattice_from_json(const std::string& text);
std::shared_ptr<const Lattice> load_lattice_file(const std::string& path);

/// `godel | lukasiewicz | product | nilmin | table:<path>`.
std::shared_ptr<const Lattice> parse_lattice_spec(const std::string& spec);

// ---------------------------------------------------------------------------
// Report serialization.

std::string validation_report_json(const ValidationReport& report);
std::string validation_report_text(const ValidationReport& report);
std::string compat_report_json(const CompatReport& report);
std::string search_outcome_json(const SearchOutcome& outcome);

}  // namespace bkrel
