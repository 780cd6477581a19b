#include "bkrel/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bkrel/errors.hpp"

namespace bkrel {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

void require_csv_safe(const std::string& field, const std::string& what) {
  if (field.empty()) {
    throw IoError(what + " must not be empty");
  }
  if (field.find_first_of(",\"\n\r") != std::string::npos) {
    throw IoError(what + " '" + field +
                  "' contains a comma, quote, or line break; CSV fields "
                  "cannot carry those");
  }
}

std::string format_cell(const Relation& r, std::size_t i, std::size_t j) {
  return r.lattice().format_value(r.at(i, j));
}

TruthValue parse_cell(const Lattice& lat, const std::string& field,
                      std::size_t i, std::size_t j) {
  try {
    return lat.parse_value(field);
  } catch (const Error& e) {
    throw IoError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                  "): " + e.what());
  }
}

ordered_json relation_json_obj(const std::string& name, const Relation& r) {
  ordered_json obj;
  obj["name"] = name;
  obj["source"] = r.source().labels();
  obj["target"] = r.target().labels();
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < r.cols(); ++j) {
      if (r.lattice().is_unit_interval()) {
        row.push_back(r.at(i, j).unit());
      } else {
        row.push_back(r.lattice().format_value(r.at(i, j)));
      }
    }
    rows.push_back(std::move(row));
  }
  obj["cells"] = std::move(rows);
  return obj;
}

std::vector<std::string> string_list(const ordered_json& j,
                                     const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw IoError(what + " must be a non-empty array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) {
      throw IoError(what + " must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

const ordered_json& require_field(const ordered_json& obj,
                                  const std::string& key,
                                  const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw IoError(what + " is missing the \"" + key + "\" field");
  }
  return *it;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed while reading '" + path + "'");
  }
  return buf.str();
}

std::string relation_to_csv(const std::string& name, const Relation& r) {
  require_csv_safe(name, "relation name");
  for (const auto& label : r.source().labels()) {
    require_csv_safe(label, "source label");
  }
  for (const auto& label : r.target().labels()) {
    require_csv_safe(label, "target label");
  }
  std::string out = name;
  for (std::size_t j = 0; j < r.cols(); ++j) {
    out += ',';
    out += r.target().labels()[j];
  }
  out += '\n';
  for (std::size_t i = 0; i < r.rows(); ++i) {
    out += r.source().labels()[i];
    for (std::size_t j = 0; j < r.cols(); ++j) {
      out += ',';
      out += format_cell(r, i, j);
    }
    out += '\n';
  }
  return out;
}

NamedRelation relation_from_csv(const std::string& text,
                                std::shared_ptr<const Lattice> lattice) {
  if (!lattice) {
    throw ValueError("relation_from_csv: lattice must not be null");
  }
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (trim(line).empty()) {
      continue;
    }
    rows.push_back(split_fields(line));
  }
  if (rows.size() < 2) {
    throw IoError("relation CSV needs a header row and at least one data row");
  }
  const auto& header = rows[0];
  if (header.size() < 2) {
    throw IoError(
        "relation CSV header needs the relation name and at least one "
        "target label");
  }
  const std::string name = header[0];
  if (name.empty()) {
    throw IoError("relation CSV: the name cell (top-left) is empty");
  }
  std::vector<std::string> target_labels(header.begin() + 1, header.end());
  std::vector<std::string> source_labels;
  std::vector<TruthValue> cells;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw IoError("relation CSV data row " + std::to_string(r) + " has " +
                    std::to_string(row.size()) + " fields, expected " +
                    std::to_string(header.size()));
    }
    source_labels.push_back(row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      cells.push_back(parse_cell(*lattice, row[c], r - 1, c - 1));
    }
  }
  try {
    DomainSig source("source", source_labels);
    DomainSig target("target", target_labels);
    return NamedRelation{
        name, Relation(std::move(source), std::move(target), lattice,
                       std::move(cells))};
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(std::string("relation CSV: ") + e.what());
  }
}

std::string relation_to_json(const std::string& name, const Relation& r) {
  return relation_json_obj(name, r).dump(2) + "\n";
}

NamedRelation relation_from_json(const std::string& text,
                                 std::shared_ptr<const Lattice> lattice) {
  if (!lattice) {
    throw ValueError("relation_from_json: lattice must not be null");
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("relation JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw IoError("relation JSON must be an object");
  }
  const auto& name_j = require_field(doc, "name", "relation JSON");
  if (!name_j.is_string()) {
    throw IoError("relation JSON \"name\" must be a string");
  }
  auto source_labels =
      string_list(require_field(doc, "source", "relation JSON"),
                  "relation JSON \"source\"");
  auto target_labels =
      string_list(require_field(doc, "target", "relation JSON"),
                  "relation JSON \"target\"");
  const auto& cells_j = require_field(doc, "cells", "relation JSON");
  if (!cells_j.is_array() || cells_j.size() != source_labels.size()) {
    throw IoError("relation JSON \"cells\" must be an array with one row per "
                  "source label");
  }
  std::vector<TruthValue> cells;
  for (std::size_t i = 0; i < cells_j.size(); ++i) {
    const auto& row = cells_j[i];
    if (!row.is_array() || row.size() != target_labels.size()) {
      throw IoError("relation JSON cells row " + std::to_string(i) +
                    " must be an array with one entry per target label");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      const auto& cell = row[j];
      if (cell.is_number()) {
        if (!lattice->is_unit_interval()) {
          throw IoError("cell (" + std::to_string(i) + "," +
                        std::to_string(j) +
                        "): finite-lattice cells must be element names, not "
                        "numbers");
        }
        try {
          cells.push_back(lattice->unit(cell.get<double>()));
        } catch (const Error& e) {
          throw IoError("cell (" + std::to_string(i) + "," +
                        std::to_string(j) + "): " + e.what());
        }
      } else if (cell.is_string()) {
        cells.push_back(
            parse_cell(*lattice, cell.get<std::string>(), i, j));
      } else {
        throw IoError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                      "): cells must be numbers or strings");
      }
    }
  }
  try {
    DomainSig source("source", source_labels);
    DomainSig target("target", target_labels);
    return NamedRelation{
        name_j.get<std::string>(),
        Relation(std::move(source), std::move(target), lattice,
                 std::move(cells))};
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(std::string("relation JSON: ") + e.what());
  }
}

NamedRelation load_relation_file(const std::string& path,
                                 std::shared_ptr<const Lattice> lattice) {
  const std::string text = read_text_file(path);
  const bool json = path.size() >= 5 &&
                    path.compare(path.size() - 5, 5, ".json") == 0;
  try {
    return json ? relation_from_json(text, std::move(lattice))
                : relation_from_csv(text, std::move(lattice));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

Lattice::FiniteSpec finite_spec_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("lattice JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw IoError("lattice JSON must be an object");
  }
  Lattice::FiniteSpec spec;
  spec.names = string_list(require_field(doc, "names", "lattice JSON"),
                           "lattice JSON \"names\"");
  const std::size_t n = spec.names.size();

  auto bool_matrix = [&](const ordered_json& j, const std::string& what) {
    if (!j.is_array() || j.size() != n) {
      throw IoError(what + " must be an array of " + std::to_string(n) +
                    " rows");
    }
    std::vector<bool> flat;
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != n) {
        throw IoError(what + " rows must each hold " + std::to_string(n) +
                      " entries");
      }
      for (const auto& cell : row) {
        if (cell.is_boolean()) {
          flat.push_back(cell.get<bool>());
        } else if (cell.is_number_integer()) {
          const auto v = cell.get<long long>();
          if (v != 0 && v != 1) {
            throw IoError(what + " entries must be booleans or 0/1");
          }
          flat.push_back(v == 1);
        } else {
          throw IoError(what + " entries must be booleans or 0/1");
        }
      }
    }
    return flat;
  };
  auto index_matrix = [&](const ordered_json& j, const std::string& what) {
    if (!j.is_array() || j.size() != n) {
      throw IoError(what + " must be an array of " + std::to_string(n) +
                    " rows");
    }
    std::vector<std::size_t> flat;
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != n) {
        throw IoError(what + " rows must each hold " + std::to_string(n) +
                      " entries");
      }
      for (const auto& cell : row) {
        if (!cell.is_number_integer() || cell.get<long long>() < 0) {
          throw IoError(what + " entries must be non-negative element "
                        "indices");
        }
        flat.push_back(static_cast<std::size_t>(cell.get<long long>()));
      }
    }
    return flat;
  };
  auto index_scalar = [&](const ordered_json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
      throw IoError(what + " must be a non-negative element index");
    }
    return static_cast<std::size_t>(j.get<long long>());
  };

  spec.leq = bool_matrix(require_field(doc, "leq", "lattice JSON"),
                         "lattice JSON \"leq\"");
  spec.tensor = index_matrix(require_field(doc, "tensor", "lattice JSON"),
                             "lattice JSON \"tensor\"");
  if (auto it = doc.find("residuum"); it != doc.end() && !it->is_null()) {
    spec.residuum = index_matrix(*it, "lattice JSON \"residuum\"");
  }
  spec.bottom = index_scalar(require_field(doc, "bottom", "lattice JSON"),
                             "lattice JSON \"bottom\"");
  spec.top = index_scalar(require_field(doc, "top", "lattice JSON"),
                          "lattice JSON \"top\"");
  return spec;
}

std::shared_ptr<const Lattice> lattice_from_json(const std::string& text) {
  auto lattice = Lattice::finite_table(finite_spec_from_json(text));
  ValidationReport report = validate_lattice(*lattice);
  if (!report.all_pass) {
    std::string failed;
    for (const auto& check : report.checks) {
      if (!check.pass) {
        if (!failed.empty()) {
          failed += ", ";
        }
        failed += check.id;
      }
    }
    throw IoError("lattice table rejected; failing checks: " + failed);
  }
  return lattice;
}

std::shared_ptr<const Lattice> load_lattice_file(const std::string& path) {
  try {
    return lattice_from_json(read_text_file(path));
  } catch (const IoError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) {
      throw;
    }
    throw IoError(path + ": " + e.what());
  }
}

std::shared_ptr<const Lattice> parse_lattice_spec(const std::string& spec) {
  if (spec == "godel") {
    return Lattice::godel();
  }
  if (spec == "lukasiewicz") {
    return Lattice::lukasiewicz();
  }
  if (spec == "product") {
    return Lattice::product();
  }
  if (spec == "nilmin") {
    return Lattice::nilpotent_min();
  }
  constexpr const char* kTablePrefix = "table:";
  if (spec.rfind(kTablePrefix, 0) == 0) {
    const std::string path = spec.substr(6);
    if (path.empty()) {
      throw ValueError("lattice spec 'table:' needs a file path");
    }
    return load_lattice_file(path);
  }
  throw ValueError("unknown lattice spec '" + spec +
                   "'; expected godel, lukasiewicz, product, nilmin, or "
                   "table:<path>");
}

std::string validation_report_json(const ValidationReport& report) {
  ordered_json obj;
  obj["lattice"] = report.lattice;
  obj["all_pass"] = report.all_pass;
  ordered_json checks = ordered_json::array();
  for (const auto& check : report.checks) {
    ordered_json c;
    c["id"] = check.id;
    c["pass"] = check.pass;
    c["witness"] = check.pass ? ordered_json() : ordered_json(check.witness);
    checks.push_back(std::move(c));
  }
  obj["checks"] = std::move(checks);
  return obj.dump(2) + "\n";
}

std::string validation_report_text(const ValidationReport& report) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& check : report.checks) {
    if (check.pass) {
      ++passed;
      out += "PASS " + check.id + "\n";
    } else {
      out += "FAIL " + check.id + ": " + check.witness + "\n";
    }
  }
  out += report.lattice + ": " + std::to_string(passed) + "/" +
         std::to_string(report.checks.size()) + " checks passed\n";
  return out;
}

std::string compat_report_json(const CompatReport& report) {
  ordered_json obj;
  obj["forward"] = report.forward;
  obj["backward"] = report.backward;
  obj["bothways"] = report.bothways;
  if (report.forward_violation) {
    const auto& v = *report.forward_violation;
    ordered_json vj;
    vj["row"] = v.row;
    vj["col"] = v.col;
    vj["lhs"] = v.lhs.lattice().format_value(v.lhs);
    vj["rhs"] = v.rhs.lattice().format_value(v.rhs);
    obj["forward_violation"] = std::move(vj);
  } else {
    obj["forward_violation"] = ordered_json();
  }
  if (report.backward_violation) {
    const auto& v = *report.backward_violation;
    ordered_json vj;
    vj["row"] = v.row;
    vj["col"] = v.col;
    vj["lhs"] = v.lhs.lattice().format_value(v.lhs);
    vj["rhs"] = v.rhs.lattice().format_value(v.rhs);
    obj["backward_violation"] = std::move(vj);
  } else {
    obj["backward_violation"] = ordered_json();
  }
  return obj.dump(2) + "\n";
}

std::string search_outcome_json(const SearchOutcome& outcome) {
  ordered_json obj;
  obj["property"] = outcome.property;
  obj["lattice"] = outcome.lattice;
  obj["sizes"] = outcome.sizes;
  obj["values"] = outcome.values;
  obj["budget"] = outcome.budget;
  obj["instances"] = outcome.instances;
  obj["verdict"] = to_string(outcome.verdict);
  if (outcome.witness) {
    ordered_json wj;
    ordered_json rels = ordered_json::array();
    for (const auto& [role, rel] : outcome.witness->relations) {
      rels.push_back(relation_json_obj(role, rel));
    }
    wj["relations"] = std::move(rels);
    wj["cell"] = {outcome.witness->row, outcome.witness->col};
    wj["detail"] = outcome.witness->detail;
    obj["witness"] = std::move(wj);
  } else {
    obj["witness"] = ordered_json();
  }
  return obj.dump(2) + "\n";
}

}  // namespace bkrel
