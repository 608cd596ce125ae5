#ifndef DSCPSC_MPS_HPP
#define DSCPSC_MPS_HPP

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "dscpsc/errors.hpp"
#include "dscpsc/milp.hpp"

namespace dscpsc {

/* Deterministic name mangling for MPS emission.  Brackets and commas in the
 * structured names are rewritten to parentheses/dots, anything non-printable
 * or blank becomes '_', and names longer than 255 characters are truncated
 * with a hash suffix.  Collisions after mangling are an error, never fixed
 * silently. */
inline std::string mangle_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char ch : name) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (c == '[') out.push_back('(');
        else if (c == ']') out.push_back(')');
        else if (c == ',') out.push_back('.');
        else if (c <= ' ' || c > '~') out.push_back('_');
        else out.push_back(ch);
    }
    if (out.size() > 255) {
        std::uint64_t h = 1469598103934665603ull; /* FNV-1a */
        for (char c : out) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        char suffix[20];
        std::snprintf(suffix, sizeof suffix, "~%016llx", static_cast<unsigned long long>(h));
        out = out.substr(0, 255 - 17) + suffix;
    }
    return out;
}

namespace detail {

inline std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void put2(std::ostream& os, const std::string& f1, const std::string& f2) {
    os << ' ' << f1;
    for (std::size_t i = f1.size(); i < 2; ++i) os << ' ';
    os << ' ' << f2 << '\n';
}

inline void put_entry(std::ostream& os, const std::string& a, const std::string& b,
                      const std::string& c) {
    os << "    ";
    os << a;
    for (std::size_t i = a.size(); i < 10; ++i) os << ' ';
    os << "  " << b;
    for (std::size_t i = b.size(); i < 10; ++i) os << ' ';
    os << "  " << c << '\n';
}

inline void put_entry4(std::ostream& os, const std::string& a, const std::string& b,
                       const std::string& c, const std::string& d) {
    os << "    ";
    os << a;
    for (std::size_t i = a.size(); i < 10; ++i) os << ' ';
    os << "  " << b;
    for (std::size_t i = b.size(); i < 10; ++i) os << ' ';
    os << "  " << c;
    for (std::size_t i = c.size(); i < 10; ++i) os << ' ';
    os << "  " << d << '\n';
}

} // namespace detail

/* Serialize the model (with its active objective) as a column-aligned MPS
 * document.  Output is a pure function of the model contents: identical
 * models produce byte-identical text. */
inline std::string write_mps_string(const MilpModel& model, const std::string& model_name = "DSCPSC") {
    if (!model.frozen())
        throw Error("write_mps: model must be frozen first");
    const Objective& obj = model.active_objective();

    /* mangle and collision-check all names (rows and columns share one
     * document; keep separate namespaces like readers do, but also reject a
     * constraint mangling onto the objective row name) */
    std::unordered_map<std::string, std::string> row_seen, col_seen;
    row_seen.emplace("OBJ", "<objective row>");
    std::vector<std::string> row_names(model.num_constraints());
    for (std::size_t i = 0; i < model.num_constraints(); ++i) {
        const std::string m = mangle_name(model.constraints()[i].name);
        auto [it, fresh] = row_seen.emplace(m, model.constraints()[i].name);
        if (!fresh) throw NameMangleCollision(it->second, model.constraints()[i].name, m);
        row_names[i] = m;
    }
    std::vector<std::string> col_names(model.num_vars());
    for (std::size_t i = 0; i < model.num_vars(); ++i) {
        const std::string& orig = model.var(VarId{static_cast<std::uint32_t>(i)}).name;
        const std::string m = mangle_name(orig);
        auto [it, fresh] = col_seen.emplace(m, orig);
        if (!fresh) throw NameMangleCollision(it->second, orig, m);
        col_names[i] = m;
    }

    std::ostringstream os;
    os << "NAME          " << mangle_name(model_name) << '\n';
    if (obj.sense == ObjSense::Maximize) {
        os << "OBJSENSE\n";
        os << "    MAX\n";
    }
    os << "ROWS\n";
    detail::put2(os, "N", "OBJ");
    for (std::size_t i = 0; i < model.num_constraints(); ++i) {
        const char* s = "L";
        switch (model.constraints()[i].sense) {
            case Sense::LE: s = "L"; break;
            case Sense::EQ: s = "E"; break;
            case Sense::GE: s = "G"; break;
        }
        detail::put2(os, s, row_names[i]);
    }

    /* transpose: per column, the rows it appears in (in row order) */
    std::vector<std::vector<std::pair<std::size_t, double>>> col_entries(model.num_vars());
    for (const auto& [id, c] : obj.expr.terms())
        col_entries[id.v].push_back({static_cast<std::size_t>(-1), c});
    for (std::size_t r = 0; r < model.num_constraints(); ++r)
        for (const auto& [id, c] : model.constraints()[r].expr.terms())
            col_entries[id.v].push_back({r, c});

    os << "COLUMNS\n";
    bool in_int = false;
    int marker_no = 0;
    for (std::size_t j = 0; j < model.num_vars(); ++j) {
        const VarDef& v = model.var(VarId{static_cast<std::uint32_t>(j)});
        const bool want_int = v.is_discrete();
        if (want_int && !in_int) {
            detail::put_entry4(os, "MARKER" + std::to_string(marker_no++), "'MARKER'", "'INTORG'", "");
            in_int = true;
        } else if (!want_int && in_int) {
            detail::put_entry4(os, "MARKER" + std::to_string(marker_no++), "'MARKER'", "'INTEND'", "");
            in_int = false;
        }
        if (col_entries[j].empty()) {
            /* declare the column even when it appears nowhere */
            detail::put_entry(os, col_names[j], "OBJ", "0");
            continue;
        }
        for (const auto& [r, c] : col_entries[j]) {
            const std::string rn = r == static_cast<std::size_t>(-1) ? "OBJ" : row_names[r];
            detail::put_entry(os, col_names[j], rn, detail::fmt_num(c));
        }
    }
    if (in_int)
        detail::put_entry4(os, "MARKER" + std::to_string(marker_no++), "'MARKER'", "'INTEND'", "");

    os << "RHS\n";
    /* convention: an RHS entry on the objective row holds the negated
     * objective constant */
    if (obj.expr.constant() != 0.0)
        detail::put_entry(os, "RHS1", "OBJ", detail::fmt_num(-obj.expr.constant()));
    for (std::size_t r = 0; r < model.num_constraints(); ++r) {
        const double rhs = model.constraints()[r].rhs;
        if (rhs != 0.0)
            detail::put_entry(os, "RHS1", row_names[r], detail::fmt_num(rhs));
    }
    os << "RANGES\n";
    os << "BOUNDS\n";
    /* explicit bounds for every variable: no reliance on reader defaults for
     * integer columns */
    for (std::size_t j = 0; j < model.num_vars(); ++j) {
        const VarDef& v = model.var(VarId{static_cast<std::uint32_t>(j)});
        if (v.lb == v.ub) {
            detail::put_entry4(os, "FX", "BND1", col_names[j], detail::fmt_num(v.lb));
            continue;
        }
        detail::put_entry4(os, "LO", "BND1", col_names[j], detail::fmt_num(v.lb));
        if (std::isfinite(v.ub))
            detail::put_entry4(os, "UP", "BND1", col_names[j], detail::fmt_num(v.ub));
        else
            detail::put_entry4(os, "PL", "BND1", col_names[j], "");
    }
    os << "ENDATA\n";
    return os.str();
}

inline void write_mps(const MilpModel& model, const std::string& path,
                      const std::string& model_name = "DSCPSC") {
    const std::string text = write_mps_string(model, model_name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("short write to '" + path + "'");
}

} // namespace dscpsc

#endif
