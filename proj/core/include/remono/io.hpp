#pragma once

// Text document formats for every domain type the command-line tool reads or
// writes. All parsers report failures with 1-based line numbers; all
// formatters emit text the matching parser accepts (round-trip stable).
//
// Formats ('#' starts a comment anywhere; blank lines ignored):
//
//   graph         p <vertices> <edges> then one "e <u> <v>" per edge, 1-based
//   channel       "channel <in> <out>" then <in> rows of <out> rationals
//   distribution  "dist" then the probabilities as rationals (any layout)
//   cone          "cone <dim>", then cells: "cell" then "ge ..."/"gt ..." rows
//   reactions     optional "species a b c", then "2 A + B -> C" lines
//   atom table    "<species> = 2 H + O" lines
//
// Rationals are written "p/q" (or a bare integer).

#include "remono/channel.hpp"
#include "remono/cone.hpp"
#include "remono/distribution.hpp"
#include "remono/graph.hpp"
#include "remono/rational.hpp"
#include "remono/rxn.hpp"

#include <map>
#include <optional>
#include <string>

namespace remono {

struct DocParseError {
  int line = 0;
  std::string message;
};

std::optional<StochasticChannel> parse_channel_text(const std::string& text,
                                                    DocParseError* err);
std::string format_channel_text(const StochasticChannel& c);

std::optional<FiniteDistribution> parse_distribution_text(const std::string& text,
                                                          DocParseError* err);
std::string format_distribution_text(const FiniteDistribution& d);

std::optional<RationalCone> parse_cone_text(const std::string& text, DocParseError* err);
std::string format_cone_text(const RationalCone& c);
std::string format_closed_cone_text(const ClosedCone& c);

std::optional<ReactionSystem> parse_reactions_text(const std::string& text,
                                                   DocParseError* err);
std::string format_reactions_text(const ReactionSystem& sys);

std::optional<std::map<std::string, Multiset>> parse_atom_table_text(const std::string& text,
                                                                     DocParseError* err);

// Inline forms used by command-line flags.
std::optional<Multiset> parse_multiset_inline(const std::string& text, std::string* err);
std::optional<Vec> parse_vector_inline(const std::string& text, std::string* err);

}  // namespace remono
