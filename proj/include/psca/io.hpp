#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psca/perm.hpp"

namespace psca {

struct ParseError : std::runtime_error {
    ParseError(std::string path_, int line_, const std::string& what_)
        : std::runtime_error(path_ + ":" + std::to_string(line_) + ": " + what_),
          path(std::move(path_)),
          line(line_) {}
    std::string path;
    int line;
};

// Accepts the space-separated text form ("4 7 3 5 6 2 1") and, for n <= 9,
// the compact digit form ("4735621").
Perm parsePermText(const std::string& text);

// Sequence file: '#' lines are comments, blank lines separate blocks. A
// comment of the form "# psca n=5 k=3 lambda=2" declares the parameters.
struct SequenceFile {
    std::optional<int> n, k;
    std::optional<int64_t> lambda;
    std::vector<std::vector<Perm>> blocks;

    std::vector<Perm> flat() const;
    size_t totalSequences() const;
};

SequenceFile readSequenceStream(std::istream& in, const std::string& path);
SequenceFile readSequenceFile(const std::string& path);

// Generator / representative files: one permutation per line, '#' comments
// ignored; block structure is irrelevant.
std::vector<Perm> readPermsFlat(const std::string& path);

std::string formatPerm(const Perm& p);  // canonical text form

}  // namespace psca
