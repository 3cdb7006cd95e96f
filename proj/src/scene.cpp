#include "linkvol/scene.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "linkvol/errors.hpp"

namespace linkvol {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void syntax_fail(const std::string& origin, int line, const std::string& msg) {
    throw Error(ErrorCategory::syntax, origin + ":" + std::to_string(line) + ": " + msg);
}

[[noreturn]] void invalid(const std::string& origin, const std::string& msg) {
    throw Error(ErrorCategory::validation, origin + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_num(const std::string& tok, const std::string& origin, int line) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.size() || !std::isfinite(v))
        syntax_fail(origin, line, "expected a number, got '" + tok + "'");
    return v;
}

void check_spin(double j, const std::string& origin) {
    if (j < 0.0 || std::abs(2.0 * j - std::round(2.0 * j)) > 1e-9)
        invalid(origin, "spin label " + g17(j) + " is not a non-negative half-integer");
}

void check_schedule(const std::vector<double>& s, bool increasing, const char* key,
                    const std::string& origin) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= 0.0) invalid(origin, std::string(key) + " entries must be positive");
        if (i > 0 && (increasing ? s[i] <= s[i - 1] : s[i] >= s[i - 1]))
            invalid(origin, std::string(key) + " must be strictly " +
                                (increasing ? "increasing" : "decreasing"));
    }
}

}  // namespace

Hyperlink SceneFile::hyperlink() const {
    Hyperlink h;
    for (const SceneMatter& m : matter) {
        MatterLoop ml;
        ml.loop = make_loop(m.vertices);
        ml.frame.normals = m.normals;
        validate_frame(ml.loop, ml.frame);
        ml.j_plus = m.j_plus;
        ml.j_minus = m.j_minus;
        h.matter.push_back(std::move(ml));
    }
    for (const SceneGeometric& g : geometric) h.geometric.push_back(make_loop(g.vertices));
    return h;
}

Region3 SceneFile::region() const {
    Region3 r;
    r.boxes = region_boxes;
    return r;
}

SceneFile parse_scene(const std::string& text, const std::string& origin) {
    SceneFile s;
    s.name.clear();

    enum class Block { top, matter, geometric, region };
    Block block = Block::top;

    std::istringstream stream(text);
    std::string line;
    int lineno = 0;
    bool saw_scene = false;

    auto numbers = [&](const std::vector<std::string>& toks, std::size_t from) {
        std::vector<double> vals;
        for (std::size_t i = from; i < toks.size(); ++i)
            vals.push_back(parse_num(toks[i], origin, lineno));
        return vals;
    };
    auto one_number = [&](const std::vector<std::string>& toks) {
        if (toks.size() != 2)
            syntax_fail(origin, lineno, "'" + toks[0] + "' takes exactly one value");
        return parse_num(toks[1], origin, lineno);
    };

    while (std::getline(stream, line)) {
        ++lineno;
        const std::vector<std::string> toks = tokenize(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        const std::string& key = toks[0];

        if (block == Block::matter) {
            if (key == "end") {
                block = Block::top;
            } else if (key == "v") {
                if (toks.size() != 9 || toks[5] != "n")
                    syntax_fail(origin, lineno,
                                "matter vertex line must be 'v t x y z n nx ny nz'");
                SceneMatter& m = s.matter.back();
                m.vertices.push_back(Point4{parse_num(toks[1], origin, lineno),
                                            parse_num(toks[2], origin, lineno),
                                            parse_num(toks[3], origin, lineno),
                                            parse_num(toks[4], origin, lineno)});
                m.normals.push_back(Vec3{parse_num(toks[6], origin, lineno),
                                         parse_num(toks[7], origin, lineno),
                                         parse_num(toks[8], origin, lineno)});
            } else {
                syntax_fail(origin, lineno, "unexpected '" + key + "' inside matter block");
            }
            continue;
        }
        if (block == Block::geometric) {
            if (key == "end") {
                block = Block::top;
            } else if (key == "v") {
                if (toks.size() != 5)
                    syntax_fail(origin, lineno, "geometric vertex line must be 'v t x y z'");
                s.geometric.back().vertices.push_back(
                    Point4{parse_num(toks[1], origin, lineno), parse_num(toks[2], origin, lineno),
                           parse_num(toks[3], origin, lineno), parse_num(toks[4], origin, lineno)});
            } else {
                syntax_fail(origin, lineno, "unexpected '" + key + "' inside geometric block");
            }
            continue;
        }
        if (block == Block::region) {
            if (key == "end") {
                block = Block::top;
            } else if (key == "box") {
                if (toks.size() != 7)
                    syntax_fail(origin, lineno,
                                "region box line must be 'box lox loy loz hix hiy hiz'");
                const std::vector<double> v = numbers(toks, 1);
                s.region_boxes.push_back(
                    Box3{Vec3{v[0], v[1], v[2]}, Vec3{v[3], v[4], v[5]}});
            } else {
                syntax_fail(origin, lineno, "unexpected '" + key + "' inside region block");
            }
            continue;
        }

        if (key == "scene") {
            if (toks.size() != 2) syntax_fail(origin, lineno, "'scene' takes exactly one name");
            s.name = toks[1];
            saw_scene = true;
        } else if (key == "charge") {
            s.charge = one_number(toks);
        } else if (key == "plane") {
            const double p = one_number(toks);
            s.plane = static_cast<int>(p);
            if (s.plane != p || s.plane < 1 || s.plane > 3)
                invalid(origin, "plane must be 1, 2 or 3");
        } else if (key == "kappa_schedule") {
            s.kappa_schedule = numbers(toks, 1);
        } else if (key == "eps_schedule") {
            s.eps_schedule = numbers(toks, 1);
        } else if (key == "vol_eps_schedule") {
            s.vol_eps_schedule = numbers(toks, 1);
        } else if (key == "min_spatial_sep") {
            s.min_spatial_sep = one_number(toks);
        } else if (key == "tube_radius") {
            s.tube_radius = one_number(toks);
        } else if (key == "max_cell") {
            s.max_cell = one_number(toks);
        } else if (key == "boundary_tol") {
            s.boundary_tol = one_number(toks);
        } else if (key == "matter") {
            if (toks.size() != 3)
                syntax_fail(origin, lineno, "matter block header must be 'matter j_plus j_minus'");
            SceneMatter m;
            m.j_plus = parse_num(toks[1], origin, lineno);
            m.j_minus = parse_num(toks[2], origin, lineno);
            s.matter.push_back(std::move(m));
            block = Block::matter;
        } else if (key == "geometric") {
            if (toks.size() != 1) syntax_fail(origin, lineno, "'geometric' takes no values");
            s.geometric.emplace_back();
            block = Block::geometric;
        } else if (key == "region") {
            if (toks.size() != 1) syntax_fail(origin, lineno, "'region' takes no values");
            block = Block::region;
        } else {
            syntax_fail(origin, lineno, "unknown key '" + key + "'");
        }
    }
    if (block != Block::top) syntax_fail(origin, lineno, "unterminated block (missing 'end')");
    if (!saw_scene) invalid(origin, "missing 'scene <name>' line");

    if (s.matter.empty()) invalid(origin, "scene has no matter loops");
    for (const SceneMatter& m : s.matter) {
        if (m.vertices.size() < 3) invalid(origin, "matter loop has fewer than three vertices");
        check_spin(m.j_plus, origin);
        check_spin(m.j_minus, origin);
    }
    for (const SceneGeometric& g : s.geometric)
        if (g.vertices.size() < 3) invalid(origin, "geometric loop has fewer than three vertices");
    for (const Box3& b : s.region_boxes)
        for (int a = 0; a < 3; ++a)
            if (!(b.lo[a] < b.hi[a])) invalid(origin, "region box must satisfy lo < hi per axis");
    check_schedule(s.kappa_schedule, /*increasing=*/true, "kappa_schedule", origin);
    check_schedule(s.eps_schedule, /*increasing=*/false, "eps_schedule", origin);
    check_schedule(s.vol_eps_schedule, /*increasing=*/false, "vol_eps_schedule", origin);
    if (s.min_spatial_sep <= 0.0) invalid(origin, "min_spatial_sep must be positive");
    if (s.tube_radius <= 0.0) invalid(origin, "tube_radius must be positive");
    if (s.max_cell <= 0.0) invalid(origin, "max_cell must be positive");
    if (s.boundary_tol <= 0.0) invalid(origin, "boundary_tol must be positive");
    return s;
}

SceneFile load_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCategory::syntax, "cannot open scene file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path);
}

std::string serialize_scene(const SceneFile& s) {
    std::ostringstream out;
    out << "scene " << s.name << "\n";
    out << "charge " << g17(s.charge) << "\n";
    out << "plane " << s.plane << "\n";
    auto schedule = [&](const char* key, const std::vector<double>& v) {
        out << key;
        for (double x : v) out << " " << g17(x);
        out << "\n";
    };
    schedule("kappa_schedule", s.kappa_schedule);
    schedule("eps_schedule", s.eps_schedule);
    schedule("vol_eps_schedule", s.vol_eps_schedule);
    out << "min_spatial_sep " << g17(s.min_spatial_sep) << "\n";
    out << "tube_radius " << g17(s.tube_radius) << "\n";
    out << "max_cell " << g17(s.max_cell) << "\n";
    out << "boundary_tol " << g17(s.boundary_tol) << "\n";
    for (const SceneMatter& m : s.matter) {
        out << "matter " << g17(m.j_plus) << " " << g17(m.j_minus) << "\n";
        for (std::size_t i = 0; i < m.vertices.size(); ++i) {
            const Point4& p = m.vertices[i];
            const Vec3& n = m.normals[i];
            out << "v " << g17(p.t) << " " << g17(p.x) << " " << g17(p.y) << " " << g17(p.z)
                << "  n " << g17(n[0]) << " " << g17(n[1]) << " " << g17(n[2]) << "\n";
        }
        out << "end\n";
    }
    for (const SceneGeometric& g : s.geometric) {
        out << "geometric\n";
        for (const Point4& p : g.vertices)
            out << "v " << g17(p.t) << " " << g17(p.x) << " " << g17(p.y) << " " << g17(p.z)
                << "\n";
        out << "end\n";
    }
    out << "region\n";
    for (const Box3& b : s.region_boxes)
        out << "box " << g17(b.lo[0]) << " " << g17(b.lo[1]) << " " << g17(b.lo[2]) << " "
            << g17(b.hi[0]) << " " << g17(b.hi[1]) << " " << g17(b.hi[2]) << "\n";
    out << "end\n";
    return out.str();
}

void save_scene(const SceneFile& scene, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCategory::internal, "cannot write scene file '" + path + "'");
    out << serialize_scene(scene);
}

std::uint64_t scene_hash(const SceneFile& scene) {
    const std::string text = serialize_scene(scene);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string scene_hash_hex(const SceneFile& scene) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(scene_hash(scene)));
    return buf;
}

SceneFile jitter_scene(const SceneFile& scene, std::uint64_t seed, double amplitude) {
    SceneFile out = scene;
    std::mt19937_64 rng(seed);
    // Bitwise-portable uniform in [-amplitude, amplitude): top 53 bits of the
    // generator output scaled to [0,1), independent of std::uniform_real_distribution.
    auto draw = [&rng, amplitude] {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return amplitude * (2.0 * u - 1.0);
    };
    for (SceneMatter& m : out.matter)
        for (Point4& p : m.vertices) {
            p.x += draw();
            p.y += draw();
            p.z += draw();
        }
    for (SceneGeometric& g : out.geometric)
        for (Point4& p : g.vertices) {
            p.x += draw();
            p.y += draw();
            p.z += draw();
        }
    for (Box3& b : out.region_boxes)
        for (int a = 0; a < 3; ++a) {
            b.lo[a] += draw();
            b.hi[a] += draw();
        }
    return out;
}

}  // namespace linkvol
