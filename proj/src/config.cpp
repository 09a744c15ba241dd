#include "scat1d/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "scat1d/errors.hpp"

namespace scat1d {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

struct RawValue {
    std::string text;
    int line = 0;
    bool consumed = false;
};

using RawMap = std::map<std::string, RawValue, std::less<>>;

double parse_double(const std::string& key, const RawValue& rv) {
    const std::string_view sv = trim(rv.text);
    double out = 0.0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    if (res.ec != std::errc() || res.ptr != sv.data() + sv.size())
        throw parse_error("invalid number for '" + key + "'", rv.line);
    return out;
}

int parse_int(const std::string& key, const RawValue& rv) {
    const std::string_view sv = trim(rv.text);
    int out = 0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    if (res.ec != std::errc() || res.ptr != sv.data() + sv.size())
        throw parse_error("invalid integer for '" + key + "'", rv.line);
    return out;
}

bool parse_bool(const std::string& key, const RawValue& rv) {
    const std::string_view sv = trim(rv.text);
    if (sv == "true") return true;
    if (sv == "false") return false;
    throw parse_error("expected true or false for '" + key + "'", rv.line);
}

std::vector<double> parse_list(const std::string& key, const RawValue& rv) {
    std::vector<double> out;
    std::string_view rest = rv.text;
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        if (item.empty())
            throw parse_error("empty element in list for '" + key + "'", rv.line);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw parse_error("invalid number in list for '" + key + "'", rv.line);
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

class Fields {
public:
    explicit Fields(RawMap& raw) : raw_(raw) {}

    const RawValue* find(const std::string& key) {
        auto it = raw_.find(key);
        if (it == raw_.end())
            return nullptr;
        it->second.consumed = true;
        return &it->second;
    }

    const RawValue& require(const std::string& key) {
        const RawValue* rv = find(key);
        if (!rv)
            throw validation_error(key, "required key is missing");
        return *rv;
    }

    void reject_unconsumed() const {
        const RawValue* worst = nullptr;
        std::string key;
        for (const auto& [k, v] : raw_) {
            if (!v.consumed && (!worst || v.line < worst->line)) {
                worst = &v;
                key = k;
            }
        }
        if (worst)
            throw parse_error("unknown key '" + key + "'", worst->line);
    }

private:
    RawMap& raw_;
};

} // namespace

RunConfig parse_config(std::string_view text) {
    RawMap raw;
    int lineno = 0;
    for (std::size_t start = 0; start < text.size();) {
        const auto nl = text.find('\n', start);
        const std::size_t end = (nl == std::string_view::npos) ? text.size() : nl;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw parse_error("expected 'key = value'", lineno);
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty())
            throw parse_error("empty key", lineno);
        if (raw.count(key))
            throw parse_error("duplicate key '" + key + "'", lineno);
        raw.emplace(key, RawValue{value, lineno, false});
    }

    Fields fields(raw);
    RunConfig cfg;

    const RawValue& kind_rv = fields.require("potential.kind");
    const std::string kind = std::string(trim(kind_rv.text));
    if (kind == "delta") {
        DeltaPotential d;
        d.strength = parse_double("potential.alpha", fields.require("potential.alpha"));
        d.position = parse_double("potential.position", fields.require("potential.position"));
        cfg.potential = d;
    } else if (kind == "comb") {
        DeltaComb c;
        const auto alphas = parse_list("potential.alphas", fields.require("potential.alphas"));
        const auto positions = parse_list("potential.positions", fields.require("potential.positions"));
        if (alphas.size() != positions.size())
            throw validation_error("potential.positions", "length differs from potential.alphas");
        for (std::size_t i = 0; i < alphas.size(); ++i)
            c.sites.push_back({alphas[i], positions[i]});
        for (std::size_t i = 1; i < c.sites.size(); ++i)
            if (!(c.sites[i].position > c.sites[i - 1].position))
                throw validation_error("potential.positions", "must be strictly increasing");
        cfg.potential = c;
    } else if (kind == "barrier") {
        SquareBarrier b;
        b.height = parse_double("potential.height", fields.require("potential.height"));
        b.width = parse_double("potential.width", fields.require("potential.width"));
        if (!(b.width > 0.0))
            throw validation_error("potential.width", "must be positive");
        cfg.potential = b;
    } else {
        throw parse_error("unknown potential.kind '" + kind + "'", kind_rv.line);
    }

    cfg.mass = parse_double("mass", fields.require("mass"));
    if (!(cfg.mass > 0.0))
        throw validation_error("mass", "must be positive");

    cfg.grid.e_min = parse_double("grid.e_min", fields.require("grid.e_min"));
    if (!(cfg.grid.e_min > 0.0))
        throw validation_error("grid.e_min", "must be positive");
    cfg.grid.e_max = parse_double("grid.e_max", fields.require("grid.e_max"));
    if (!(cfg.grid.e_max > cfg.grid.e_min))
        throw validation_error("grid.e_max", "must exceed grid.e_min");
    cfg.grid.n_points = parse_int("grid.n_points", fields.require("grid.n_points"));
    if (cfg.grid.n_points < 1)
        throw validation_error("grid.n_points", "must be at least 1");

    if (const RawValue* rv = fields.find("grid.spacing")) {
        const std::string_view sv = trim(rv->text);
        if (sv == "linear")
            cfg.grid.spacing = GridSpacing::linear;
        else if (sv == "log")
            cfg.grid.spacing = GridSpacing::log;
        else
            throw parse_error("grid.spacing must be linear or log", rv->line);
    }
    if (const RawValue* rv = fields.find("grid.allow_evanescent"))
        cfg.grid.allow_evanescent = parse_bool("grid.allow_evanescent", *rv);

    if (const RawValue* rv = fields.find("series.max_order"))
        cfg.series.max_order = parse_int("series.max_order", *rv);
    if (cfg.series.max_order < 0 || cfg.series.max_order > 64)
        throw validation_error("series.max_order", "must be in [0, 64]");

    if (const RawValue* rv = fields.find("series.acceleration")) {
        const std::string_view sv = trim(rv->text);
        if (sv == "none")
            cfg.series.acceleration = Acceleration::none;
        else if (sv == "shanks")
            cfg.series.acceleration = Acceleration::shanks;
        else if (sv == "pade")
            cfg.series.acceleration = Acceleration::pade;
        else
            throw parse_error("series.acceleration must be none, shanks or pade", rv->line);
    }

    if (const RawValue* rv = fields.find("convention.paper_sign"))
        cfg.convention.paper_sign = parse_bool("convention.paper_sign", *rv);

    if (const RawValue* rv = fields.find("output"))
        cfg.output = std::string(trim(rv->text));

    fields.reject_unconsumed();

    // barriers taller than the grid floor need the evanescent flag
    if (const auto* b = std::get_if<SquareBarrier>(&cfg.potential)) {
        if (b->height > 0.0 && !(cfg.grid.e_min > b->height) && !cfg.grid.allow_evanescent)
            throw validation_error("grid.e_min",
                                   "grid enters the evanescent regime; set grid.allow_evanescent = true");
    }
    return cfg;
}

std::vector<double> energy_grid(const RunConfig& cfg) {
    std::vector<double> grid;
    const int n = cfg.grid.n_points;
    grid.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        grid.push_back(cfg.grid.e_min);
        return grid;
    }
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        if (cfg.grid.spacing == GridSpacing::linear)
            grid.push_back(cfg.grid.e_min + f * (cfg.grid.e_max - cfg.grid.e_min));
        else
            grid.push_back(cfg.grid.e_min * std::pow(cfg.grid.e_max / cfg.grid.e_min, f));
    }
    return grid;
}

} // namespace scat1d
