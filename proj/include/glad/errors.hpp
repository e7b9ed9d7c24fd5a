#pragma once

#include <stdexcept>
#include <string>

namespace glad {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed inputs: bad matrices, self loops, duplicate links, layouts that
// reference unknown vertices or servers, inconsistent files.
struct ValidationError : Error {
    using Error::Error;
};

// A layout routes traffic between two servers with no connection. Carried as
// a dedicated type so callers can distinguish "infeasible" from "malformed".
struct UnreachablePairError : Error {
    int server_i;
    int server_j;
    UnreachablePairError(int i, int j)
        : Error("unreachable server pair (" + std::to_string(i) + ", " + std::to_string(j) + ")"),
          server_i(i),
          server_j(j) {}
};

// Resource guard tripped (e.g. brute-force state space too big).
struct TooLargeError : Error {
    using Error::Error;
};

// Text inputs that fail to parse; carries a 1-based line number when known.
struct ParseError : Error {
    long line;
    ParseError(const std::string& what, long line_no) : Error(what), line(line_no) {}
};

// Evolution trace events that do not apply to the graph they reach.
struct TraceError : Error {
    using Error::Error;
};

// Pair selection requested but no connected server pair exists.
struct NoConnectedPairsError : Error {
    NoConnectedPairsError() : Error("edge network has no connected server pairs") {}
};

}  // namespace glad
