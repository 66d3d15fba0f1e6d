#include "psca/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace psca {

Perm parsePermText(const std::string& text) {
    std::vector<int> symbols;
    if (text.find_first_of(" \t") != std::string::npos) {
        std::istringstream ss(text);
        std::string tok;
        while (ss >> tok) {
            size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument("bad symbol '" + tok + "'");
            symbols.push_back(v);
        }
    } else {
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("bad character '" + std::string(1, c) +
                                            "' in permutation");
            symbols.push_back(c - '0');
        }
        if (symbols.size() > 9)
            throw std::invalid_argument(
                "compact digit form only supports n <= 9; use spaces");
    }
    if (symbols.empty()) throw std::invalid_argument("empty permutation");
    return Perm::fromOneBased(symbols);
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void scanManifest(const std::string& comment, SequenceFile& out) {
    std::istringstream ss(comment);
    std::string tok;
    while (ss >> tok) {
        auto intAfter = [&](const char* prefix) -> std::optional<int64_t> {
            size_t len = std::string(prefix).size();
            if (tok.rfind(prefix, 0) != 0) return std::nullopt;
            try {
                return std::stoll(tok.substr(len));
            } catch (...) {
                return std::nullopt;
            }
        };
        if (auto v = intAfter("n=")) out.n = static_cast<int>(*v);
        if (auto v = intAfter("k=")) out.k = static_cast<int>(*v);
        if (auto v = intAfter("lambda=")) out.lambda = *v;
    }
}

}  // namespace

SequenceFile readSequenceStream(std::istream& in, const std::string& path) {
    SequenceFile out;
    std::vector<Perm> block;
    std::string raw;
    int lineNo = 0;
    auto flush = [&] {
        if (!block.empty()) {
            out.blocks.push_back(std::move(block));
            block.clear();
        }
    };
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string line = trim(raw);
        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') {
            scanManifest(line.substr(1), out);
            continue;
        }
        try {
            block.push_back(parsePermText(line));
        } catch (const std::invalid_argument& e) {
            throw ParseError(path, lineNo, e.what());
        }
    }
    flush();
    return out;
}

SequenceFile readSequenceFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return readSequenceStream(in, path);
}

std::vector<Perm> readPermsFlat(const std::string& path) {
    return readSequenceFile(path).flat();
}

std::vector<Perm> SequenceFile::flat() const {
    std::vector<Perm> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

size_t SequenceFile::totalSequences() const {
    size_t s = 0;
    for (const auto& b : blocks) s += b.size();
    return s;
}

std::string formatPerm(const Perm& p) { return p.toText(); }

}  // namespace psca
