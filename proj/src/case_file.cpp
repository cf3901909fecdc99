#include "sensint/case_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "sensint/errors.hpp"

namespace sensint {

namespace {

enum class Section { none, case_, plant, controller, mismatch };

struct Parser {
    std::string source;
    int line = 0;

    [[noreturn]] void error(const std::string& what) const {
        std::ostringstream msg;
        msg << source << ":" << line << ": " << what;
        fail(ErrorCode::ParseError, msg.str());
    }

    double number(std::string_view text, std::string_view key) const {
        double v = 0.0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
            error("field '" + std::string(key) + "': '" + std::string(text) + "' is not a finite number");
        }
        return v;
    }

    std::vector<double> numbers(std::string_view text, std::string_view key) const {
        std::vector<double> out;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
            std::size_t j = i;
            while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != ',') ++j;
            if (j > i) out.push_back(number(text.substr(i, j - i), key));
            i = j;
        }
        if (out.empty()) error("field '" + std::string(key) + "' needs at least one number");
        return out;
    }

    bool boolean(std::string_view text, std::string_view key) const {
        if (text == "true" || text == "1" || text == "yes") return true;
        if (text == "false" || text == "0" || text == "no") return false;
        error("field '" + std::string(key) + "': expected true or false, got '" + std::string(text) + "'");
    }
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const Polynomial& p) {
    std::string out;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) out += ' ';
        out += fmt(p.coeffs()[k]);
    }
    return out;
}

struct ControllerDraft {
    std::string name;
    Polynomial num{1.0};
    Polynomial den{1.0};
    double dead_time = 0.0;
    bool has_num = false;
    bool has_den = false;
};

}  // namespace

CaseDefinition parse_case_file(std::istream& in, std::string_view source) {
    Parser p{std::string(source)};
    CaseDefinition c;
    c.omega_l = 0.0;
    bool have_plant = false;
    bool have_case = false;
    bool have_sigma = false;
    SingularPoint sp;
    std::vector<ControllerDraft> controllers;
    Section section = Section::none;

    std::string raw;
    while (std::getline(in, raw)) {
        ++p.line;
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;

        if (text.front() == '[') {
            if (text.back() != ']') p.error("unterminated section header");
            const std::string_view inner = trim(text.substr(1, text.size() - 2));
            const std::string_view kind = inner.substr(0, inner.find(' '));
            const std::string_view label =
                inner.find(' ') == std::string_view::npos ? std::string_view{} : trim(inner.substr(inner.find(' ')));
            if (kind == "case") {
                section = Section::case_;
                have_case = true;
            } else if (kind == "plant") {
                if (have_plant) p.error("duplicate [plant] section");
                section = Section::plant;
                have_plant = true;
            } else if (kind == "controller") {
                if (label.empty()) p.error("[controller] needs a name");
                for (const ControllerDraft& d : controllers) {
                    if (d.name == label) p.error("duplicate controller '" + std::string(label) + "'");
                }
                section = Section::controller;
                controllers.push_back({std::string(label)});
            } else if (kind == "mismatch") {
                if (label.empty()) p.error("[mismatch] needs a name");
                section = Section::mismatch;
                c.mismatches.push_back({std::string(label), {}});
            } else {
                p.error("unknown section '" + std::string(kind) + "'");
            }
            continue;
        }

        const auto eq = text.find('=');
        if (eq == std::string_view::npos) p.error("expected key = value");
        const std::string_view key = trim(text.substr(0, eq));
        const std::string_view value = trim(text.substr(eq + 1));
        if (value.empty()) p.error("field '" + std::string(key) + "' has no value");

        switch (section) {
            case Section::none: p.error("key outside of any section");
            case Section::case_:
                if (key == "name") {
                    c.name = std::string(value);
                } else if (key == "title") {
                    c.title = std::string(value);
                } else if (key == "omega_l") {
                    c.omega_l = p.number(value, key);
                } else if (key == "sigma") {
                    sp.sigma = p.number(value, key);
                    have_sigma = true;
                } else if (key == "eta") {
                    sp.eta = p.number(value, key);
                } else if (key == "compensate") {
                    c.compensate = p.boolean(value, key);
                } else if (key == "mismatch_controller") {
                    c.mismatch_controller = std::string(value);
                } else if (key == "band_controller") {
                    c.band_controller = std::string(value);
                } else if (key == "mismatch_weights") {
                    const auto w = p.numbers(value, key);
                    if (w.size() != 3) p.error("mismatch_weights needs three numbers: gain time_const dead_time");
                    c.mismatch_weights = {w[0], w[1], w[2]};
                } else {
                    p.error("unknown [case] field '" + std::string(key) + "'");
                }
                break;
            case Section::plant:
                if (key == "gain") {
                    c.plant.gain = p.number(value, key);
                } else if (key == "num" || key == "num.fixed") {
                    c.plant.num.push_back({Polynomial(p.numbers(value, key)), key == "num"});
                } else if (key == "den" || key == "den.fixed") {
                    Polynomial poly(p.numbers(value, key));
                    if (poly.is_zero()) p.error("denominator factor is zero");
                    c.plant.den.push_back({std::move(poly), key == "den"});
                } else if (key == "dead_time") {
                    c.plant.dead_time = p.number(value, key);
                    if (c.plant.dead_time < 0.0) p.error("dead_time must be >= 0");
                } else {
                    p.error("unknown [plant] field '" + std::string(key) + "'");
                }
                break;
            case Section::controller: {
                ControllerDraft& d = controllers.back();
                if (key == "num") {
                    d.num = d.num * Polynomial(p.numbers(value, key));
                    d.has_num = true;
                } else if (key == "den") {
                    Polynomial poly(p.numbers(value, key));
                    if (poly.is_zero()) p.error("denominator factor is zero");
                    d.den = d.den * poly;
                    d.has_den = true;
                } else if (key == "dead_time") {
                    d.dead_time = p.number(value, key);
                    if (d.dead_time < 0.0) p.error("dead_time must be >= 0");
                } else {
                    p.error("unknown [controller] field '" + std::string(key) + "'");
                }
                break;
            }
            case Section::mismatch: {
                PerturbationSpec& s = c.mismatches.back().spec;
                double* slot = nullptr;
                if (key == "gain") {
                    slot = &s.gain_pct;
                } else if (key == "time_const") {
                    slot = &s.time_const_pct;
                } else if (key == "dead_time") {
                    slot = &s.dead_time_pct;
                } else {
                    p.error("unknown [mismatch] field '" + std::string(key) + "'");
                }
                *slot = p.number(value, key);
                if (*slot <= -1.0) p.error("perturbation fraction must exceed -1");
                break;
            }
        }
    }

    if (!have_case) p.error("missing [case] section");
    if (!have_plant) p.error("missing [plant] section");
    if (controllers.empty()) p.error("at least one [controller] section is required");
    if (c.name.empty()) p.error("[case] needs a name");
    if (!(c.omega_l > 0.0)) p.error("[case] needs omega_l > 0");
    if (c.plant.den.empty()) p.error("[plant] needs at least one den factor");
    if (have_sigma) {
        if (!(sp.sigma > 0.0)) p.error("sigma must be > 0");
        c.singular_point = sp;
    }
    for (const ControllerDraft& d : controllers) {
        if (!d.has_num || !d.has_den) p.error("controller '" + d.name + "' needs num and den");
        c.controllers.push_back({d.name, TransferFunction(d.num, d.den, d.dead_time)});
    }
    const auto known = [&c](const std::string& name) {
        for (const ControllerDef& ctrl : c.controllers) {
            if (ctrl.name == name) return true;
        }
        return false;
    };
    if (!c.mismatch_controller.empty() && !known(c.mismatch_controller)) {
        p.error("mismatch_controller '" + c.mismatch_controller + "' is not a controller of this case");
    }
    if (!c.band_controller.empty() && !known(c.band_controller)) {
        p.error("band_controller '" + c.band_controller + "' is not a controller of this case");
    }
    return c;
}

CaseDefinition load_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open case file '" + path + "'");
    return parse_case_file(in, path);
}

void write_case_file(std::ostream& out, const CaseDefinition& c) {
    out << "[case]\n";
    out << "name = " << c.name << "\n";
    if (!c.title.empty()) out << "title = " << c.title << "\n";
    out << "omega_l = " << fmt(c.omega_l) << "\n";
    if (c.singular_point) {
        out << "sigma = " << fmt(c.singular_point->sigma) << "\n";
        out << "eta = " << fmt(c.singular_point->eta) << "\n";
    }
    if (c.compensate) out << "compensate = true\n";
    if (!c.mismatch_controller.empty()) out << "mismatch_controller = " << c.mismatch_controller << "\n";
    if (!c.band_controller.empty()) out << "band_controller = " << c.band_controller << "\n";
    out << "mismatch_weights = " << fmt(c.mismatch_weights.gain_pct) << ' ' << fmt(c.mismatch_weights.time_const_pct)
        << ' ' << fmt(c.mismatch_weights.dead_time_pct) << "\n";

    out << "\n[plant]\n";
    out << "gain = " << fmt(c.plant.gain) << "\n";
    for (const Factor& f : c.plant.num) out << (f.time_constant ? "num = " : "num.fixed = ") << fmt(f.poly) << "\n";
    for (const Factor& f : c.plant.den) out << (f.time_constant ? "den = " : "den.fixed = ") << fmt(f.poly) << "\n";
    out << "dead_time = " << fmt(c.plant.dead_time) << "\n";

    for (const ControllerDef& ctrl : c.controllers) {
        out << "\n[controller " << ctrl.name << "]\n";
        out << "num = " << fmt(ctrl.tf.num()) << "\n";
        out << "den = " << fmt(ctrl.tf.den()) << "\n";
        if (ctrl.tf.dead_time() != 0.0) out << "dead_time = " << fmt(ctrl.tf.dead_time()) << "\n";
    }
    for (const MismatchDef& m : c.mismatches) {
        out << "\n[mismatch " << m.name << "]\n";
        out << "gain = " << fmt(m.spec.gain_pct) << "\n";
        out << "time_const = " << fmt(m.spec.time_const_pct) << "\n";
        out << "dead_time = " << fmt(m.spec.dead_time_pct) << "\n";
    }
}

std::string case_file_text(const CaseDefinition& c) {
    std::ostringstream os;
    write_case_file(os, c);
    return os.str();
}

}  // namespace sensint
