#include "transpec/builtins.hpp"

#include "transpec/errors.hpp"
#include "transpec/wavelets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace transpec {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

double parse_number(std::string_view text, std::string_view context) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
        throw ValidationError("bad number '" + t + "' in " + std::string(context));
    return v;
}

int parse_odd(std::string_view text, std::string_view name) {
    int k = 0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), k);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size())
        throw ValidationError("builtin '" + std::string(name) + "': bad stretch factor");
    return k;
}

}  // namespace

std::vector<Interval> parse_interval_union(std::string_view text) {
    std::vector<Interval> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t plus = text.find('+', pos);
        if (plus == std::string_view::npos) plus = text.size();
        const std::string piece = trim(text.substr(pos, plus - pos));
        if (piece.size() < 5 || piece.front() != '[' || piece.back() != ')')
            throw ValidationError("interval '" + piece + "' must look like [a,b)");
        const std::string body = piece.substr(1, piece.size() - 2);
        const std::size_t comma = body.find(',');
        if (comma == std::string::npos) throw ValidationError("interval '" + piece + "' needs a comma");
        const Interval iv{parse_number(std::string_view(body).substr(0, comma), piece),
                          parse_number(std::string_view(body).substr(comma + 1), piece)};
        if (!(iv.hi > iv.lo)) throw ValidationError("interval '" + piece + "' is empty");
        out.push_back(iv);
        pos = plus + 1;
    }
    if (out.empty()) throw ValidationError("empty interval union");
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].lo < out[i - 1].hi) throw ValidationError("intervals of a union must be disjoint");
    return out;
}

LineFunction builtin_function(std::string_view name) {
    const std::string n = trim(name);
    if (n == "haar_father") return stretched_haar(1).father;
    if (n == "haar_mother") return stretched_haar(1).mother;
    const std::size_t colon = n.find(':');
    if (colon != std::string::npos) {
        const std::string head = n.substr(0, colon);
        const std::string_view arg = std::string_view(n).substr(colon + 1);
        if (head == "stretched_haar_father") return stretched_haar(parse_odd(arg, n)).father;
        if (head == "stretched_haar_mother") return stretched_haar(parse_odd(arg, n)).mother;
        if (head == "shannon") return BandLimited(parse_interval_union(arg));
    }
    throw ValidationError("unknown builtin '" + n + "'");
}

std::vector<std::string> builtin_examples() {
    return {"haar_father", "haar_mother", "stretched_haar_father:3", "stretched_haar_mother:3", "shannon:[0,0.5)"};
}

}  // namespace transpec
