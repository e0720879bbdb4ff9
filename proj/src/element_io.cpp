#include "epdlog/element_io.hpp"

#include <limits>
#include <vector>

#include "epdlog/errors.hpp"

namespace epdlog {
namespace {

std::vector<Natural> parse_fields(std::string_view text, std::size_t expected) {
    std::vector<Natural> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const std::string_view field = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
        out.push_back(parse_natural(field));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != expected) {
        throw InvalidInput("expected " + std::to_string(expected) + " comma-separated coefficients, got " +
                           std::to_string(out.size()));
    }
    return out;
}

}  // namespace

std::string to_text(const EpElement& g) {
    return g.a.get_str() + "," + g.b.get_str() + "," + g.c.get_str() + "," + g.u.get_str() + "," + g.v.get_str();
}

std::string to_text(const EbarElement& g) {
    return g.a.get_str() + "," + g.b.get_str() + "," + g.c.get_str() + "," + g.v.get_str();
}

Natural parse_natural(std::string_view text) {
    if (text.empty()) throw InvalidInput("empty number");
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw InvalidInput("not a decimal natural number: '" + std::string(text) + "'");
    }
    return Natural(std::string(text), 10);
}

EpElement parse_ep(std::string_view text, const Natural& p) {
    const auto f = parse_fields(text, 5);
    return EpElement::make(p, f[0], f[1], f[2], f[3], f[4]);
}

EbarElement parse_ebar(std::string_view text, const Natural& p) {
    const auto f = parse_fields(text, 4);
    return EbarElement::make(p, f[0], f[1], f[2], f[3]);
}

nlohmann::json natural_to_json(const Natural& n) {
    if (n >= 0 && bit_length(n) <= 64) {
        std::uint64_t value = 0;
        mpz_export(&value, nullptr, -1, sizeof(value), 0, 0, n.get_mpz_t());
        return value;
    }
    return n.get_str();
}

Natural natural_from_json(const nlohmann::json& j) {
    if (j.is_number_unsigned()) {
        const auto value = j.get<std::uint64_t>();
        Natural out;
        mpz_import(out.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
        return out;
    }
    if (j.is_number_integer()) {
        const auto value = j.get<std::int64_t>();
        if (value < 0) throw InvalidInput("negative number in record");
        return Natural(static_cast<unsigned long>(value));
    }
    if (j.is_string()) return parse_natural(j.get<std::string>());
    throw InvalidInput("expected a number or decimal string, got " + j.dump());
}

nlohmann::json to_json(const EpElement& g) {
    return {{"p", natural_to_json(g.p)}, {"a", natural_to_json(g.a)}, {"b", natural_to_json(g.b)},
            {"c", natural_to_json(g.c)}, {"u", natural_to_json(g.u)}, {"v", natural_to_json(g.v)}};
}

EpElement ep_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("element record must be an object");
    for (const char* key : {"p", "a", "b", "c", "u", "v"}) {
        if (!j.contains(key)) throw InvalidInput(std::string("element record is missing '") + key + "'");
    }
    return EpElement::make(natural_from_json(j["p"]), natural_from_json(j["a"]), natural_from_json(j["b"]),
                           natural_from_json(j["c"]), natural_from_json(j["u"]), natural_from_json(j["v"]));
}

nlohmann::json to_json(const AttackTranscript& t) {
    return {{"x", natural_to_json(t.x)},
            {"x0", natural_to_json(t.x0)},
            {"ebar_order", natural_to_json(t.ebar_order)},
            {"s", natural_to_json(t.s)},
            {"q", natural_to_json(t.q)},
            {"zp_dlog_calls", t.zp_dlog_calls}};
}

}  // namespace epdlog
