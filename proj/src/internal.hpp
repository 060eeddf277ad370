// internal.hpp
// Cross-translation-unit helpers that are not part of the public API:
// the shared tokenizer, the quiver parser hook that hands relation lines
// back to the presentation layer, and json converters.

#ifndef CQ_SRC_INTERNAL_HPP
#define CQ_SRC_INTERNAL_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "cq/quiver.hpp"

namespace cq {

namespace detail {

struct Token {
    std::string text;
    int line;
    int col;
};

std::vector<std::vector<Token>> tokenize_lines(const std::string& text);
std::string take_name_colon(const std::vector<Token>& toks, size_t& idx,
                            const char* what);

} // namespace detail

Quiver parse_quiver_impl(const std::string& text, bool allow_relations,
                         std::vector<std::vector<detail::Token>>* rel_lines);

nlohmann::json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const nlohmann::json& j);

} // namespace cq

#endif
