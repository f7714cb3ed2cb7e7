#pragma once

#include <stdexcept>
#include <string>

namespace labelcut {

enum class errc {
    self_loop,
    duplicate_edge,
    empty_label_set,
    disconnected,
    non_positive_weight,
    unknown_label,
    unknown_edge,
    vertex_out_of_range,
    no_terminals,
    budget_exceeded,
    parse_error,
    infeasible,
    invalid_argument,
    mismatched_provenance,
    empty_subset,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::self_loop: return "SelfLoop";
        case errc::duplicate_edge: return "DuplicateEdge";
        case errc::empty_label_set: return "EmptyLabelSet";
        case errc::disconnected: return "Disconnected";
        case errc::non_positive_weight: return "NonPositiveWeight";
        case errc::unknown_label: return "UnknownLabel";
        case errc::unknown_edge: return "UnknownEdge";
        case errc::vertex_out_of_range: return "VertexOutOfRange";
        case errc::no_terminals: return "NoTerminals";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::parse_error: return "ParseError";
        case errc::infeasible: return "Infeasible";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::mismatched_provenance: return "MismatchedProvenance";
        case errc::empty_subset: return "EmptySubset";
    }
    return "Error";
}

// All failures surface as this one exception type; `line` is set for parse
// errors only.
class Error : public std::runtime_error {
public:
    Error(errc code, std::string message, int line = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message +
                             (line >= 0 ? " (line " + std::to_string(line) + ")" : "")),
          code_(code),
          line_(line) {}

    errc code() const { return code_; }
    int line() const { return line_; }

private:
    errc code_;
    int line_;
};

} // namespace labelcut
