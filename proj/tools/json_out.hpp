#ifndef HEUNQES_TOOLS_JSON_OUT_HPP
#define HEUNQES_TOOLS_JSON_OUT_HPP

// Deterministic JSON serialization: insertion-ordered objects and a fixed
// 17-significant-digit rendering of floating-point numbers, so identical
// inputs produce byte-identical output.

#include <json.hpp>

#include <cstdio>
#include <string>

namespace heunqes::tools {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void dump_json(const Json& j, std::string& out)
{
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += Json(it.key()).dump();
                out += ':';
                dump_json(it.value(), out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ',';
                first = false;
                dump_json(item, out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

inline std::string dump_json(const Json& j)
{
    std::string out;
    dump_json(j, out);
    out += '\n';
    return out;
}

} // namespace heunqes::tools

#endif // HEUNQES_TOOLS_JSON_OUT_HPP
