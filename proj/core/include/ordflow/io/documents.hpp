#pragma once

// JSON documents for flows, programs, games and reductions. Formulas, terms
// and ordinals are written in the text syntax; see docs/file-formats.md.

#include "ordflow/flow/kflow.hpp"
#include "ordflow/flow/ordinal_flow.hpp"
#include "ordflow/games/games.hpp"
#include "ordflow/grid.hpp"
#include "ordflow/search/ls.hpp"
#include "ordflow/search/pls.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace ordflow::io {

// Throws FormatError when the file cannot be read.
std::string read_file(const std::string& path);

// The "kind" field. Throws FormatError on malformed JSON or a missing kind.
std::string document_kind(std::string_view text);

// Applies the optional "grid" block ({"max", "ranges", "domain_bound",
// "code_bound"}) on top of `base`.
Grid document_grid(std::string_view text, Grid base);

// Each reader checks the kind and throws FormatError on missing or
// mistyped fields and ParseError on bad formula or term text.
flow::OrdinalFlow read_ordinal_flow(std::string_view text);
flow::KFlow read_kflow(std::string_view text);
search::LSProgram read_ls(std::string_view text);
search::PLS1Program read_pls1(std::string_view text);
search::PLS2Program read_pls2(std::string_view text);
games::Game read_game(std::string_view text);

struct Reduction1Document {
  games::Reduction1 reduction;
  games::Game target;
  games::Game source;
};
struct Reduction2Document {
  games::Reduction2 reduction;
  games::Game target;
  games::Game source;
};
Reduction1Document read_reduction1(std::string_view text);
Reduction2Document read_reduction2(std::string_view text);

std::string write_ordinal_flow(const flow::OrdinalFlow& f);
std::string write_kflow(const flow::KFlow& f);
std::string write_ls(const search::LSProgram& p);
std::string write_function(const logic::DefinedFunction& f);

}  // namespace ordflow::io
