#include "wanderflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wanderflow {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

// "s+:L:src" (the sign token also accepts a unicode minus)
Attachment parse_attachment(const std::string& text, const std::string& file, int line) {
    auto p1 = text.rfind(':');
    auto p2 = text.rfind(':', p1 == std::string::npos ? p1 : p1 - 1);
    if (p1 == std::string::npos || p2 == std::string::npos || p2 == 0)
        throw ParseError(file, line, "bad attachment '" + text + "' (want SEP:L|R:src|snk)");
    Attachment att;
    att.sep = text.substr(0, p2);
    std::string side = text.substr(p2 + 1, p1 - p2 - 1);
    std::string dir = text.substr(p1 + 1);
    if (side == "L") att.side = Side::L;
    else if (side == "R") att.side = Side::R;
    else throw ParseError(file, line, "bad side '" + side + "' in '" + text + "'");
    if (dir == "src") att.dir = Direction::src;
    else if (dir == "snk") att.dir = Direction::snk;
    else throw ParseError(file, line, "bad direction '" + dir + "' in '" + text + "'");
    return att;
}

EndSpec parse_endspec(const std::string& text, const std::string& file, int line) {
    EndSpec out;
    if (text == "free") return out;
    std::string rest = text;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string piece = rest.substr(0, comma);
        if (piece.empty()) throw ParseError(file, line, "empty attachment in '" + text + "'");
        out.attachments.push_back(parse_attachment(piece, file, line));
        if (comma == std::string::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

Sign parse_sign(const std::string& tok, const std::string& file, int line) {
    if (tok == "+") return Sign::plus;
    if (tok == "-" || tok == "−") return Sign::minus;
    throw ParseError(file, line, "bad sign '" + tok + "'");
}

}  // namespace

FoliationModel parse_fol(const std::string& text, const std::string& filename) {
    FoliationModel m;
    bool surface_seen = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokenize(strip_comment(raw));
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        if (head == "surface") {
            if (toks.size() != 2) throw ParseError(filename, lineno, "surface wants one value");
            if (surface_seen) throw ParseError(filename, lineno, "surface declared twice");
            surface_seen = true;
            if (toks[1] == "plane") m.surface = Surface::plane;
            else if (toks[1] == "cylinder") m.surface = Surface::cylinder;
            else throw ParseError(filename, lineno, "unknown surface '" + toks[1] + "'");
        } else if (head == "sep") {
            if (toks.size() != 2) throw ParseError(filename, lineno, "sep wants an id");
            if (std::find(m.separatrices.begin(), m.separatrices.end(), toks[1]) !=
                m.separatrices.end())
                throw ParseError(filename, lineno, "duplicate separatrix '" + toks[1] + "'");
            m.separatrices.push_back(toks[1]);
        } else if (head == "band") {
            if (toks.size() != 6 || toks[2] != "lo" || toks[4] != "hi")
                throw ParseError(filename, lineno, "band wants: band ID lo ENDSPEC hi ENDSPEC");
            if (m.find_band(toks[1]))
                throw ParseError(filename, lineno, "duplicate band '" + toks[1] + "'");
            Band b;
            b.id = toks[1];
            b.lo = parse_endspec(toks[3], filename, lineno);
            b.hi = parse_endspec(toks[5], filename, lineno);
            m.bands.push_back(std::move(b));
        } else if (head == "insep") {
            if (toks.size() != 8 || toks[2] != ">" || toks[4] != "sign" || toks[6] != "via")
                throw ParseError(filename, lineno,
                                 "insep wants: insep SRC > DST sign +|- via BAND:lo|hi");
            InsepEdge e;
            e.src = toks[1];
            e.dst = toks[3];
            e.sign = parse_sign(toks[5], filename, lineno);
            auto colon = toks[7].rfind(':');
            if (colon == std::string::npos)
                throw ParseError(filename, lineno, "bad witness '" + toks[7] + "'");
            e.witness_band = toks[7].substr(0, colon);
            std::string end = toks[7].substr(colon + 1);
            if (end == "lo") e.witness_end = EndTag::lo;
            else if (end == "hi") e.witness_end = EndTag::hi;
            else throw ParseError(filename, lineno, "bad witness end '" + end + "'");
            m.insep_edges.push_back(std::move(e));
        } else if (head == "orbit") {
            if (toks.size() != 6 || toks[2] != "in" || toks[4] != "at")
                throw ParseError(filename, lineno, "orbit wants: orbit ID in BAND at RATIONAL");
            if (m.find_orbit(toks[1]))
                throw ParseError(filename, lineno, "duplicate orbit '" + toks[1] + "'");
            RepOrbit o;
            o.id = toks[1];
            o.band = toks[3];
            try {
                o.parameter = parse_rational(toks[5]);
            } catch (const error& e) {
                throw ParseError(filename, lineno, e.what());
            }
            m.orbits.push_back(std::move(o));
        } else {
            throw ParseError(filename, lineno, "unknown directive '" + head + "'");
        }
    }
    if (!surface_seen) throw ParseError(filename, lineno, "missing surface line");
    m.sort_canonical();
    return m;
}

FoliationModel load_fol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_fol(buf.str(), path);
}

namespace {

std::string endspec_str(const EndSpec& e) {
    if (e.free()) return "free";
    std::string out;
    for (const auto& att : e.attachments) {
        if (!out.empty()) out += ",";
        out += att.sep + ":" + to_string(att.side) + ":" + to_string(att.dir);
    }
    return out;
}

}  // namespace

std::string print_fol(const FoliationModel& m) {
    FoliationModel canon = m;
    canon.sort_canonical();
    std::string out = "surface ";
    out += canon.surface == Surface::plane ? "plane" : "cylinder";
    out += "\n";
    for (const auto& s : canon.separatrices) out += "sep " + s + "\n";
    for (const auto& b : canon.bands)
        out += "band " + b.id + " lo " + endspec_str(b.lo) + " hi " + endspec_str(b.hi) + "\n";
    for (const auto& e : canon.insep_edges)
        out += "insep " + e.src + " > " + e.dst + " sign " + to_string(e.sign) + " via " +
               e.witness_band + ":" + to_string(e.witness_end) + "\n";
    for (const auto& o : canon.orbits)
        out += "orbit " + o.id + " in " + o.band + " at " + format_rational(o.parameter) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// .lin files and recursive spec terms

namespace {

struct RecParser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '.'))
            ++pos;
        return text.substr(start, pos - start);
    }

    RecursiveSpec parse() {
        std::string w = word();
        if (w == "leaf") return RecursiveSpec::leaf();
        if (w == "accum") {
            if (!eat('(')) throw error("accum wants '('");
            RecursiveSpec sub = parse();
            if (!eat(')')) throw error("accum wants ')'");
            return RecursiveSpec::accum(std::move(sub));
        }
        if (w == "concat" || w == "accum_list") {
            if (!eat('(')) throw error(w + " wants '('");
            std::vector<RecursiveSpec> parts;
            while (true) {
                skip_ws();
                if (pos + 3 <= text.size() && text.compare(pos, 3, "...") == 0) {
                    // trailing ellipsis is allowed (and implied) in accum_list
                    pos += 3;
                    if (w != "accum_list") throw error("'...' is only valid in accum_list");
                    break;
                }
                parts.push_back(parse());
                if (!eat(',')) break;
            }
            if (!eat(')')) throw error(w + " wants ')'");
            if (w == "concat") return RecursiveSpec::concat(std::move(parts));
            return RecursiveSpec::accum_list(std::move(parts));
        }
        throw error("unknown spec constructor '" + w + "'");
    }
};

}  // namespace

RecursiveSpec parse_rec_term(const std::string& term) {
    RecParser p{term};
    RecursiveSpec s = p.parse();
    p.skip_ws();
    if (p.pos != term.size()) throw error("trailing input after spec term: '" + term + "'");
    return s;
}

std::string print_rec_term(const RecursiveSpec& spec) {
    switch (spec.kind) {
        case RecursiveSpec::Kind::leaf:
            return "leaf";
        case RecursiveSpec::Kind::accum:
            return "accum(" + print_rec_term(spec.children[0]) + ")";
        case RecursiveSpec::Kind::concat:
        case RecursiveSpec::Kind::accum_list: {
            std::string out =
                spec.kind == RecursiveSpec::Kind::concat ? "concat(" : "accum_list(";
            for (std::size_t i = 0; i < spec.children.size(); ++i) {
                if (i) out += ",";
                out += print_rec_term(spec.children[i]);
            }
            if (spec.kind == RecursiveSpec::Kind::accum_list) out += ",...";
            return out + ")";
        }
    }
    return "?";
}

LinFile parse_lin(const std::string& text, const std::string& filename) {
    LinFile out;
    std::optional<Topology> topo;
    std::optional<std::vector<Rational>> fixed;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto stripped = strip_comment(raw);
        auto toks = tokenize(stripped);
        if (toks.empty()) continue;
        if (toks[0] == "topology") {
            if (toks.size() != 2) throw ParseError(filename, lineno, "topology wants one value");
            if (toks[1] == "interval") topo = Topology::interval;
            else if (toks[1] == "circle") topo = Topology::circle;
            else throw ParseError(filename, lineno, "unknown topology '" + toks[1] + "'");
        } else if (toks[0] == "fixed") {
            std::vector<Rational> pts;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                try {
                    pts.push_back(parse_rational(toks[i]));
                } catch (const error& e) {
                    throw ParseError(filename, lineno, e.what());
                }
            }
            fixed = std::move(pts);
        } else if (toks[0] == "rec") {
            auto pos = stripped.find("rec");
            try {
                out.rec = parse_rec_term(stripped.substr(pos + 3));
            } catch (const error& e) {
                throw ParseError(filename, lineno, e.what());
            }
        } else {
            throw ParseError(filename, lineno, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!topo) throw ParseError(filename, lineno, "missing topology line");
    if (fixed) {
        try {
            out.spec = LineFlowSpec(*topo, std::move(*fixed));
        } catch (const error& e) {
            throw ParseError(filename, lineno, e.what());
        }
    } else if (!out.rec) {
        throw ParseError(filename, lineno, "a .lin file needs a fixed list or a rec term");
    }
    return out;
}

LinFile load_lin(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lin(buf.str(), path);
}

std::string print_lin(const LinFile& f) {
    std::string out;
    Topology topo = f.spec ? f.spec->topology : Topology::interval;
    out += std::string("topology ") + (topo == Topology::interval ? "interval" : "circle") + "\n";
    if (f.spec) {
        out += "fixed";
        for (const auto& r : f.spec->fixed) out += " " + format_rational(r);
        out += "\n";
    }
    if (f.rec) out += "rec " + print_rec_term(*f.rec) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,x,y\n";
    for (const auto& s : traj.steps)
        out += fmt(s.t) + "," + fmt(s.p.x) + "," + fmt(s.p.y) + "\n";
    return out;
}

std::string link_csv(const LinkWitness& w) {
    std::string out = "start_x,start_y,tau,end_x,end_y,p_x,p_y,q_x,q_y,eps,T\n";
    out += fmt(w.start.x) + "," + fmt(w.start.y) + "," + fmt(w.tau) + "," + fmt(w.end.x) + "," +
           fmt(w.end.y) + "," + fmt(w.p.x) + "," + fmt(w.p.y) + "," + fmt(w.q.x) + "," +
           fmt(w.q.y) + "," + fmt(w.eps) + "," + fmt(w.T) + "\n";
    return out;
}

}  // namespace wanderflow
