#include "partdet/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "partdet/entropy.hpp"
#include "partdet/error.hpp"
#include "partdet/pdfunc.hpp"
#include "partdet/representatives.hpp"

namespace partdet {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& message) {
    fail("ParseError", where + ": " + message);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& where, const std::string& tok) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        parse_fail(where, "expected an integer, got '" + tok + "'");
    }
}

std::uint64_t parse_u64(const std::string& where, const std::string& tok) {
    try {
        if (!tok.empty() && tok[0] == '-') throw std::invalid_argument(tok);
        std::size_t used = 0;
        std::uint64_t v = std::stoull(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        parse_fail(where, "expected a non-negative integer, got '" + tok + "'");
    }
}

bool parse_bool(const std::string& where, const std::string& tok) {
    if (tok == "true") return true;
    if (tok == "false") return false;
    parse_fail(where, "expected true or false, got '" + tok + "'");
}

ElementId parse_element(const std::string& where, const std::string& tok) {
    long long v = parse_int(where, tok);
    if (v < 0 || v > 1'000'000) parse_fail(where, "element index out of range: " + tok);
    return static_cast<ElementId>(v);
}

// "(0,1,2)" with no internal spaces
std::vector<ElementId> parse_tuple(const std::string& where, const std::string& tok) {
    if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')')
        parse_fail(where, "expected a tuple like (0,1,2), got '" + tok + "'");
    std::vector<ElementId> out;
    std::string body = tok.substr(1, tok.size() - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string piece = comma == std::string::npos ? body.substr(pos)
                                                       : body.substr(pos, comma - pos);
        out.push_back(parse_element(where, piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// prefix tokens, then "{ e1 e2 ... }"; keep_order skips sorting
std::pair<std::vector<std::string>, std::vector<ElementId>> parse_braced(
    const std::string& where, const std::string& rest, bool keep_order) {
    auto open = rest.find('{');
    auto close = rest.find('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        parse_fail(where, "expected { elements }");
    if (!trim(rest.substr(close + 1)).empty()) parse_fail(where, "trailing text after '}'");
    auto prefix = split_ws(rest.substr(0, open));
    std::vector<ElementId> elems;
    for (const auto& tok : split_ws(rest.substr(open + 1, close - open - 1)))
        elems.push_back(parse_element(where, tok));
    if (elems.empty()) parse_fail(where, "empty element list");
    if (!keep_order) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    }
    return {std::move(prefix), std::move(elems)};
}

SubsetMask parse_mask_tok(const std::string& where, const std::string& tok) {
    try {
        return parse_mask(tok, kMaxIndices);
    } catch (const Error& e) {
        parse_fail(where, e.what());
    }
}

Rational parse_ratio(const std::string& where, const std::string& tok) {
    try {
        return parse_rational(tok);
    } catch (const Error& e) {
        parse_fail(where, e.what());
    }
}

RingPoly parse_poly_tok(const std::string& where, const std::string& expr) {
    try {
        return parse_ring_poly(expr);
    } catch (const Error& e) {
        parse_fail(where, e.what());
    }
}

void handle_entry(ScenarioDoc& doc, const std::string& where, const std::string& key,
                  const std::string& rest) {
    auto toks = split_ws(rest);
    auto need = [&](std::size_t n) {
        if (toks.size() != n)
            parse_fail(where, "key '" + key + "' takes " + std::to_string(n) +
                                  " argument(s), got " + std::to_string(toks.size()));
    };
    auto once_str = [&](const std::string& current) {
        if (!current.empty()) parse_fail(where, "duplicate key '" + key + "'");
    };

    if (key == "name") {
        once_str(doc.name);
        if (toks.empty()) parse_fail(where, "key 'name' needs a value");
        doc.name = trim(rest);
    } else if (key == "statement") {
        once_str(doc.statement);
        need(1);
        doc.statement = toks[0];
    } else if (key == "group") {
        need(1);
        doc.groups.push_back(parse_structure_name(toks[0]));
    } else if (key == "group-file") {
        need(1);
        std::ifstream in(toks[0]);
        if (!in) parse_fail(where, "cannot open " + toks[0]);
        doc.groups.push_back(FiniteGroup::from_stream(in));
    } else if (key == "ring") {
        if (doc.ring) parse_fail(where, "duplicate key 'ring'");
        need(1);
        doc.ring = parse_ring_name(toks[0]);
    } else if (key == "ring-file") {
        if (doc.ring) parse_fail(where, "duplicate key 'ring'");
        need(1);
        std::ifstream in(toks[0]);
        if (!in) parse_fail(where, "cannot open " + toks[0]);
        doc.ring = FiniteRing::from_stream(in);
    } else if (key == "ground") {
        auto [prefix, elems] = parse_braced(where, rest, false);
        if (prefix.size() != 1) parse_fail(where, "usage: ground <slot> { elements }");
        long long i = parse_int(where, prefix[0]);
        if (i != static_cast<long long>(doc.grounds.size()) + 1)
            parse_fail(where, "ground slots must be declared in order starting at 1; expected " +
                                  std::to_string(doc.grounds.size() + 1));
        doc.grounds.push_back(std::move(elems));
    } else if (key == "set") {
        auto [prefix, elems] = parse_braced(where, rest, false);
        if (prefix.size() != 1) parse_fail(where, "usage: set <NAME> { elements }");
        if (!doc.sets.emplace(prefix[0], std::move(elems)).second)
            parse_fail(where, "duplicate set '" + prefix[0] + "'");
    } else if (key == "order") {
        auto [prefix, elems] = parse_braced(where, rest, true);
        if (prefix.size() != 1) parse_fail(where, "usage: order <slot> { elements }");
        long long i = parse_int(where, prefix[0]);
        if (i < 1) parse_fail(where, "order slot must be positive");
        if (!doc.orders.emplace(static_cast<int>(i), std::move(elems)).second)
            parse_fail(where, "duplicate order for slot " + prefix[0]);
    } else if (key == "function") {
        once_str(doc.function_kind);
        if (toks.empty()) parse_fail(where, "key 'function' needs a kind");
        doc.function_kind = toks[0];
        for (std::size_t i = 1; i < toks.size(); ++i)
            doc.function_coeffs.push_back(parse_int(where, toks[i]));
    } else if (key == "family" || key == "family-b") {
        auto& target = key == "family" ? doc.family : doc.family_b;
        if (!target.empty()) parse_fail(where, "duplicate key '" + key + "'");
        if (toks.empty()) parse_fail(where, "key '" + key + "' needs members");
        for (const auto& tok : toks) target.push_back(parse_mask_tok(where, tok));
    } else if (key == "weights") {
        once_str(doc.weights_kind);
        need(1);
        if (toks[0] != "regular" && toks[0] != "degree" && toks[0] != "lp")
            parse_fail(where, "weights must be regular, degree, or lp");
        doc.weights_kind = toks[0];
    } else if (key == "weight") {
        need(3);
        if (toks[1] != ":") parse_fail(where, "usage: weight <mask> : <p/q>");
        doc.weight_list.emplace_back(parse_mask_tok(where, toks[0]),
                                     parse_ratio(where, toks[2]));
    } else if (key == "mask-s" || key == "mask-t") {
        auto& target = key == "mask-s" ? doc.mask_s : doc.mask_t;
        if (target) parse_fail(where, "duplicate key '" + key + "'");
        need(1);
        target = parse_mask_tok(where, toks[0]);
    } else if (key == "marginal") {
        if (toks.size() < 2) parse_fail(where, "usage: marginal <slot> <e:p/q> ...");
        long long i = parse_int(where, toks[0]);
        if (i < 1) parse_fail(where, "marginal slot must be positive");
        Marginal m;
        for (std::size_t t = 1; t < toks.size(); ++t) {
            auto colon = toks[t].find(':');
            if (colon == std::string::npos)
                parse_fail(where, "marginal entries look like element:p/q, got '" + toks[t] + "'");
            m.emplace_back(parse_element(where, toks[t].substr(0, colon)),
                           parse_ratio(where, toks[t].substr(colon + 1)));
        }
        if (!doc.marginals.emplace(static_cast<int>(i), std::move(m)).second)
            parse_fail(where, "duplicate marginal for slot " + toks[0]);
    } else if (key == "atom") {
        need(3);
        if (toks[1] != ":") parse_fail(where, "usage: atom (e1,e2,...) : <p/q>");
        doc.atoms.emplace_back(parse_tuple(where, toks[0]), parse_ratio(where, toks[2]));
    } else if (key == "point") {
        need(1);
        doc.points.push_back(parse_tuple(where, toks[0]));
    } else if (key == "step") {
        need(2);
        doc.steps.push_back(
            {parse_mask_tok(where, toks[0]), parse_mask_tok(where, toks[1])});
    } else if (key == "poly") {
        if (toks.size() < 2) parse_fail(where, "usage: poly <name> <expression>");
        for (const auto& [name, p] : doc.polys)
            if (name == toks[0]) parse_fail(where, "duplicate poly '" + toks[0] + "'");
        auto name_end = rest.find(toks[0]) + toks[0].size();
        doc.polys.emplace_back(toks[0], parse_poly_tok(where, rest.substr(name_end)));
    } else if (key == "section") {
        if (toks.size() < 2) parse_fail(where, "usage: section <mask> <expression>");
        SubsetMask m = parse_mask_tok(where, toks[0]);
        auto mask_end = rest.find(toks[0]) + toks[0].size();
        if (!doc.sections.emplace(m, parse_poly_tok(where, rest.substr(mask_end))).second)
            parse_fail(where, "duplicate section for " + toks[0]);
    } else if (key == "fbar") {
        if (doc.fbar) parse_fail(where, "duplicate key 'fbar'");
        if (toks.empty()) parse_fail(where, "key 'fbar' needs an expression");
        doc.fbar = parse_poly_tok(where, rest);
    } else if (key == "k" || key == "m" || key == "set-count" || key == "subset-max" ||
               key == "max-order" || key == "min-order" || key == "threads") {
        need(1);
        auto& target = key == "k"            ? doc.k
                       : key == "m"          ? doc.m
                       : key == "set-count"  ? doc.set_count
                       : key == "subset-max" ? doc.subset_max
                       : key == "max-order"  ? doc.max_order
                       : key == "min-order"  ? doc.min_order
                                             : doc.threads;
        if (target) parse_fail(where, "duplicate key '" + key + "'");
        long long v = parse_int(where, toks[0]);
        if (v < 1 || v > 1'000'000) parse_fail(where, "value out of range for '" + key + "'");
        target = static_cast<int>(v);
    } else if (key == "seed") {
        if (doc.seed) parse_fail(where, "duplicate key 'seed'");
        need(1);
        doc.seed = parse_u64(where, toks[0]);
    } else if (key == "trials" || key == "budget") {
        auto& target = key == "trials" ? doc.trials : doc.budget;
        if (target) parse_fail(where, "duplicate key '" + key + "'");
        need(1);
        target = parse_u64(where, toks[0]);
    } else if (key == "exhaustive" || key == "abelian") {
        auto& target = key == "exhaustive" ? doc.exhaustive : doc.abelian;
        if (target) parse_fail(where, "duplicate key '" + key + "'");
        need(1);
        target = parse_bool(where, toks[0]);
    } else {
        parse_fail(where, "unknown key '" + key + "'");
    }
}

void handle(ScenarioDoc& doc, const std::string& where, const std::string& key,
            const std::string& rest) {
    try {
        handle_entry(doc, where, key, rest);
    } catch (const Error& e) {
        if (e.code() == "ParseError") throw;
        parse_fail(where, e.what());
    }
}

ScenarioDoc parse_scenario_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("ParseError", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("ParseError", "the top level must be a JSON object");
    ScenarioDoc doc;
    for (const auto& [key, value] : j.items()) {
        const std::string where = "key '" + key + "'";
        auto one = [&](const nlohmann::json& v) {
            std::string rest;
            if (v.is_string())
                rest = v.get<std::string>();
            else if (v.is_number_unsigned())
                rest = std::to_string(v.get<unsigned long long>());
            else if (v.is_number_integer())
                rest = std::to_string(v.get<long long>());
            else if (v.is_boolean())
                rest = v.get<bool>() ? "true" : "false";
            else
                fail("ParseError", where + ": values must be strings, integers, booleans, "
                                           "or arrays of those");
            handle(doc, where, key, rest);
        };
        if (value.is_array())
            for (const auto& v : value) one(v);
        else
            one(value);
    }
    return doc;
}

}  // namespace

FiniteGroup parse_structure_name(const std::string& name) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        auto x = name.find('x', pos);
        parts.push_back(x == std::string::npos ? name.substr(pos) : name.substr(pos, x - pos));
        if (x == std::string::npos) break;
        pos = x + 1;
    }
    auto component = [&](const std::string& p) -> FiniteGroup {
        if (p == "Q8") return FiniteGroup::quaternion();
        if (p.size() >= 2 && (p[0] == 'Z' || p[0] == 'D')) {
            long long n = 0;
            for (std::size_t i = 1; i < p.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(p[i])))
                    fail("UnknownGroup", "cannot parse structure name '" + name + "'");
                n = n * 10 + (p[i] - '0');
                if (n > 256) fail("BadParameter", "structure component too large in '" + name + "'");
            }
            if (p[0] == 'Z') return FiniteGroup::cyclic(static_cast<int>(n));
            return FiniteGroup::dihedral(static_cast<int>(n));
        }
        fail("UnknownGroup", "cannot parse structure name '" + name + "'");
    };
    FiniteGroup g = component(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i)
        g = FiniteGroup::direct_product(g, component(parts[i]));
    return g;
}

FiniteRing parse_ring_name(const std::string& name) {
    if (name == "M2(Z2)") return FiniteRing::matrix_2x2(2);
    if (name == "M2(Z3)") return FiniteRing::matrix_2x2(3);
    if (name.size() >= 2 && name[0] == 'Z') {
        long long n = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
                fail("UnknownRing", "cannot parse ring name '" + name + "'");
            n = n * 10 + (name[i] - '0');
            if (n > 4096) fail("BadParameter", "ring too large: '" + name + "'");
        }
        return FiniteRing::mod(static_cast<int>(n));
    }
    fail("UnknownRing", "cannot parse ring name '" + name + "'");
}

ScenarioDoc parse_scenario(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
        return parse_scenario_json(text);

    ScenarioDoc doc;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto space = line.find_first_of(" \t");
        std::string key = space == std::string::npos ? line : line.substr(0, space);
        std::string rest = space == std::string::npos ? "" : trim(line.substr(space + 1));
        handle(doc, "line " + std::to_string(line_no), key, rest);
    }
    return doc;
}

ScenarioDoc load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("FileError", "cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

namespace {

[[noreturn]] void missing(const std::string& statement, const std::string& key) {
    fail("MissingKey", "statement '" + statement + "' needs key '" + key + "'");
}

const FiniteGroup& one_group(const ScenarioDoc& doc) {
    if (doc.groups.empty()) missing(doc.statement, "group");
    if (doc.groups.size() > 1)
        fail("BadScenario", "verification takes a single group, got " +
                                std::to_string(doc.groups.size()));
    return doc.groups[0];
}

const FiniteRing& one_ring(const ScenarioDoc& doc) {
    if (!doc.ring) missing(doc.statement, "ring");
    return *doc.ring;
}

const std::vector<std::vector<ElementId>>& grounds_of(const ScenarioDoc& doc) {
    if (doc.grounds.empty()) missing(doc.statement, "ground");
    return doc.grounds;
}

const std::vector<ElementId>& set_of(const ScenarioDoc& doc, const std::string& name) {
    auto it = doc.sets.find(name);
    if (it == doc.sets.end()) missing(doc.statement, "set " + name);
    return it->second;
}

SubsetMask mask_of(const ScenarioDoc& doc, const std::optional<SubsetMask>& m,
                   const std::string& key) {
    if (!m) missing(doc.statement, key);
    return *m;
}

PDFunction make_function(const ScenarioDoc& doc) {
    const auto& grounds = grounds_of(doc);
    std::string kind = doc.function_kind.empty() ? "sum" : doc.function_kind;

    if (kind == "projection") {
        ElementId carrier = 0;
        for (const auto& g : grounds)
            for (ElementId e : g) carrier = std::max(carrier, e);
        return PDFunction::projection(GroundFamily::of(grounds, carrier + 1));
    }
    if (kind == "product")
        return PDFunction::ring_product(one_ring(doc),
                                        GroundFamily::of(grounds, one_ring(doc).order()));

    const FiniteGroup& g = one_group(doc);
    auto ground = GroundFamily::of(grounds, g.order());
    if (kind == "sum") {
        if (g.is_abelian())
            return PDFunction::abelian_linear(
                g, std::move(ground), std::vector<long long>(grounds.size(), 1));
        return PDFunction::group_product(g, std::move(ground));
    }
    if (kind == "linear")
        return PDFunction::abelian_linear(g, std::move(ground), doc.function_coeffs);
    if (kind == "interval") return PDFunction::interval_g(g, std::move(ground));
    if (kind == "cartesian") return PDFunction::cartesian(std::move(ground));
    fail("BadScenario", "unknown function kind '" + kind + "'");
}

std::vector<Marginal> make_marginals(const ScenarioDoc& doc) {
    const auto& grounds = grounds_of(doc);
    std::vector<Marginal> out;
    for (int i = 1; i <= static_cast<int>(grounds.size()); ++i) {
        auto it = doc.marginals.find(i);
        if (it == doc.marginals.end()) {
            out.push_back(uniform_on(grounds[static_cast<std::size_t>(i - 1)]));
            continue;
        }
        for (const auto& [e, p] : it->second)
            if (!std::binary_search(grounds[static_cast<std::size_t>(i - 1)].begin(),
                                    grounds[static_cast<std::size_t>(i - 1)].end(), e))
                fail("BadMarginal", "marginal " + std::to_string(i) + " places mass on " +
                                        std::to_string(e) + ", outside ground " +
                                        std::to_string(i));
        out.push_back(it->second);
    }
    for (const auto& [i, m] : doc.marginals)
        if (i > static_cast<int>(grounds.size()))
            fail("BadMarginal", "marginal slot " + std::to_string(i) + " beyond the " +
                                    std::to_string(grounds.size()) + " declared grounds");
    return out;
}

JointDistribution make_joint(const ScenarioDoc& doc, int carrier) {
    const auto& grounds = grounds_of(doc);
    if (!doc.atoms.empty()) {
        std::map<std::vector<ElementId>, Rational> atoms;
        for (const auto& [tuple, p] : doc.atoms) {
            if (tuple.size() != grounds.size())
                fail("BadAtom", "atom arity " + std::to_string(tuple.size()) +
                                    " does not match the " + std::to_string(grounds.size()) +
                                    " declared grounds");
            for (std::size_t i = 0; i < tuple.size(); ++i)
                if (!std::binary_search(grounds[i].begin(), grounds[i].end(), tuple[i]))
                    fail("BadAtom", "atom coordinate " + std::to_string(tuple[i]) +
                                        " outside ground " + std::to_string(i + 1));
            atoms[tuple] += p;
        }
        return JointDistribution::from_atoms(GroundFamily::of(grounds, carrier), atoms);
    }
    return product_distribution(make_marginals(doc));
}

void reject_atoms_for_product(const ScenarioDoc& doc) {
    if (!doc.atoms.empty())
        fail("BadScenario", "statement '" + doc.statement +
                                "' assumes independent coordinates: give marginals, not atoms");
}

FractionalCovering make_covering(const ScenarioDoc& doc, int k) {
    if (doc.family.empty()) missing(doc.statement, "family");
    auto fam = SubsetFamily::of(k, doc.family);
    if (!doc.weight_list.empty()) {
        if (!doc.weights_kind.empty())
            fail("BadScenario", "give either 'weights' or 'weight' lines, not both");
        std::map<SubsetMask, Rational> by_mask;
        for (const auto& [m, w] : doc.weight_list)
            if (!by_mask.emplace(m, w).second)
                fail("BadScenario", "duplicate weight for " + mask_str(m));
        std::vector<Rational> weights;
        for (SubsetMask m : fam.members) {
            auto it = by_mask.find(m);
            if (it == by_mask.end()) missing(doc.statement, "weight " + mask_str(m));
            weights.push_back(it->second);
            by_mask.erase(it);
        }
        if (!by_mask.empty())
            fail("BadScenario",
                 "weight given for " + mask_str(by_mask.begin()->first) + ", not in the family");
        return FractionalCovering::of(std::move(fam), std::move(weights));
    }
    if (doc.weights_kind == "regular") return regular_covering(fam);
    if (doc.weights_kind == "degree") return degree_covering(fam);
    if (doc.weights_kind == "lp") return min_covering_lp(fam);
    missing(doc.statement, "weights");
}

std::set<Value> points_to_values(const ScenarioDoc& doc, const PDFunction& f) {
    const auto& grounds = grounds_of(doc);
    const SubsetMask full = full_mask(static_cast<int>(grounds.size()));
    std::set<Value> ys;
    for (const auto& pt : doc.points) {
        if (pt.size() != grounds.size())
            fail("BadPoint", "point arity " + std::to_string(pt.size()) +
                                 " does not match the " + std::to_string(grounds.size()) +
                                 " declared grounds");
        for (std::size_t i = 0; i < pt.size(); ++i)
            if (!std::binary_search(grounds[i].begin(), grounds[i].end(), pt[i]))
                fail("BadPoint", "point coordinate " + std::to_string(pt[i]) +
                                     " outside ground " + std::to_string(i + 1));
        ys.insert(f.eval(full, pt));
    }
    return ys;
}

// fbar plus optional per-mask section polynomials; masks without a section
// contribute the identity on their slots, which is always determining.
PDFunction::Evaluator make_combine(const FiniteRing& r, const RingPoly& fbar,
                                   const std::map<SubsetMask, RingPoly>& sections, int m) {
    return [r, fbar, sections, m](SubsetMask mask,
                                  const std::vector<ElementId>& packed) -> Value {
        if (mask == full_mask(m)) return Value::ring(fbar.eval(r, packed));
        auto it = sections.find(mask);
        if (it == sections.end()) {
            std::vector<Value> vs;
            vs.reserve(packed.size());
            for (ElementId e : packed) vs.push_back(Value::ring(e));
            return Value::tuple(std::move(vs));
        }
        std::vector<ElementId> unpacked(static_cast<std::size_t>(m), 0);
        auto idx = mask_indices(mask);
        for (std::size_t i = 0; i < idx.size(); ++i)
            unpacked[static_cast<std::size_t>(idx[i] - 1)] = packed[i];
        return Value::ring(it->second.eval(r, unpacked));
    };
}

int max_variable(const RingPoly& p) {
    int v = 0;
    for (const auto& t : p.terms)
        for (int w : t.word) v = std::max(v, w);
    return v;
}

Verdict dispatch(const ScenarioDoc& doc) {
    const std::string& st = doc.statement;
    const unsigned long long budget = doc.budget.value_or(kDefaultTupleBudget);

    if (st == "entropy-submodularity") {
        reject_atoms_for_product(doc);
        return check_entropy_submodularity(make_function(doc), make_marginals(doc),
                                           mask_of(doc, doc.mask_s, "mask-s"),
                                           mask_of(doc, doc.mask_t, "mask-t"), budget);
    }
    if (st == "entropy-mutual-information") {
        reject_atoms_for_product(doc);
        return check_mutual_information(make_function(doc), make_marginals(doc),
                                        mask_of(doc, doc.mask_s, "mask-s"),
                                        mask_of(doc, doc.mask_t, "mask-t"), budget);
    }
    if (st == "compression-order") {
        reject_atoms_for_product(doc);
        const int k = static_cast<int>(grounds_of(doc).size());
        if (doc.family.empty()) missing(st, "family");
        if (doc.family_b.empty()) missing(st, "family-b");
        auto a = SubsetFamily::of(k, doc.family);
        auto b = SubsetFamily::of(k, doc.family_b);
        std::vector<CompressionStep> chain = doc.steps;
        if (chain.empty()) {
            auto dom = dominates(a, b);
            if (dom.status != DominatesResult::Status::Yes)
                fail("NotDominated",
                     "no compression chain found from 'family' to 'family-b'");
            chain = dom.sequence;
        }
        return check_compression_entropy(make_function(doc), make_marginals(doc), a, b, chain,
                                         budget);
    }
    if (st == "entropy-covering-bound") {
        reject_atoms_for_product(doc);
        auto f = make_function(doc);
        auto covering = make_covering(doc, static_cast<int>(doc.grounds.size()));
        return check_entropy_upper_bound(f, make_marginals(doc), covering, budget);
    }
    if (st == "entropy-4sets") return check_entropy_counterexample_4sets(doc.m.value_or(2));
    if (st == "pairwise-conditional-bound") {
        int carrier = 0;
        for (const auto& g : grounds_of(doc))
            for (ElementId e : g) carrier = std::max(carrier, e);
        if (!doc.groups.empty()) carrier = std::max(carrier, doc.groups[0].order() - 1);
        return check_pairwise_conditional(make_joint(doc, carrier + 1));
    }

    if (st == "restricted-covering-bound") {
        auto f = make_function(doc);
        if (doc.points.empty()) missing(st, "point");
        auto covering = make_covering(doc, static_cast<int>(doc.grounds.size()));
        return check_set_main(f, points_to_values(doc, f), covering, budget);
    }
    if (st == "compound-covering-bound") {
        auto f = make_function(doc);
        auto covering = make_covering(doc, static_cast<int>(doc.grounds.size()));
        return check_compound_full(f, covering, budget);
    }
    if (st == "projection-covering-bound") {
        if (doc.points.empty()) missing(st, "point");
        const int k = doc.k.value_or(static_cast<int>(doc.points[0].size()));
        return check_projection_bound(doc.points, k, make_covering(doc, k));
    }
    if (st == "projection-submodularity") {
        if (doc.points.empty()) return projection_nonsubmodularity_example();
        const int k = static_cast<int>(doc.points[0].size());
        std::vector<std::vector<ElementId>> cols(static_cast<std::size_t>(k));
        ElementId carrier = 0;
        for (const auto& pt : doc.points) {
            if (static_cast<int>(pt.size()) != k)
                fail("BadPoint", "points must share one arity");
            for (int i = 0; i < k; ++i) {
                cols[static_cast<std::size_t>(i)].push_back(pt[static_cast<std::size_t>(i)]);
                carrier = std::max(carrier, pt[static_cast<std::size_t>(i)]);
            }
        }
        for (auto& c : cols) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
        }
        auto f = PDFunction::projection(GroundFamily::of(cols, carrier + 1));
        std::set<Value> ys;
        for (const auto& pt : doc.points) ys.insert(f.eval(full_mask(k), pt));
        Verdict v = sumset_log_submodularity_probe(f, ys, mask_of(doc, doc.mask_s, "mask-s"),
                                                   mask_of(doc, doc.mask_t, "mask-t"), budget);
        v.statement = "projection-submodularity";
        return v;
    }
    if (st == "sumset-log-submodularity") {
        auto f = make_function(doc);
        std::set<Value> ys = doc.points.empty()
                                 ? compound_image(f, full_mask(static_cast<int>(
                                                         doc.grounds.size())),
                                                  budget)
                                 : points_to_values(doc, f);
        return sumset_log_submodularity_probe(f, ys, mask_of(doc, doc.mask_s, "mask-s"),
                                              mask_of(doc, doc.mask_t, "mask-t"), budget);
    }

    if (st == "abelian-partition-bound") {
        const auto& bs = grounds_of(doc);
        return check_abelian_sumset(one_group(doc), set_of(doc, "A"), bs, set_of(doc, "D"),
                                    make_covering(doc, static_cast<int>(bs.size())));
    }
    if (st == "abelian-regular-bound") {
        const auto& bs = grounds_of(doc);
        if (doc.family.empty()) missing(st, "family");
        return check_regular_abelian(one_group(doc), set_of(doc, "A"), bs, set_of(doc, "D"),
                                     SubsetFamily::of(static_cast<int>(bs.size()), doc.family));
    }
    if (st == "nonabelian-interval-bound")
        return check_nonabelian(one_group(doc), grounds_of(doc), budget);
    if (st == "naive-triple-bound")
        return check_naive_triple(one_group(doc), set_of(doc, "S"), set_of(doc, "T"),
                                  set_of(doc, "U"));
    if (st == "ruzsa-triple")
        return check_ruzsa_triple(one_group(doc), set_of(doc, "S"), set_of(doc, "T"),
                                  set_of(doc, "U"));
    if (st == "ruzsa-quadruple")
        return check_ruzsa_quadruple(one_group(doc), set_of(doc, "S"), set_of(doc, "T"),
                                     set_of(doc, "U"), set_of(doc, "V"));
    if (st == "sum-of-squares")
        return check_sum_of_squares(one_ring(doc), set_of(doc, "A"), set_of(doc, "B"));

    if (st == "polynomial-compound") {
        const FiniteRing& r = one_ring(doc);
        const auto& grounds = grounds_of(doc);
        if (!doc.fbar) missing(st, "fbar");
        std::vector<RingPoly> inner;
        const RingPoly* whole = nullptr;
        for (const auto& [name, p] : doc.polys) {
            if (name == "F")
                whole = &p;
            else
                inner.push_back(p);
        }
        if (!whole) missing(st, "poly F");
        if (inner.empty()) missing(st, "poly (inner)");
        const int m = static_cast<int>(inner.size());
        if (max_variable(*doc.fbar) > m)
            fail("BadArity", "fbar references slot " + std::to_string(max_variable(*doc.fbar)) +
                                 " but only " + std::to_string(m) +
                                 " inner polynomials are declared");
        for (const auto& [mask, poly] : doc.sections) {
            if (mask == 0 || mask >= full_mask(m))
                fail("BadSection", "section masks must be proper nonempty subsets of " +
                                       mask_str(full_mask(m)));
            for (const auto& t : poly.terms)
                for (int w : t.word)
                    if (!mask_has(mask, w))
                        fail("BadSection", "section " + mask_str(mask) +
                                               " may only use its own slots");
        }
        CompoundSpec spec{m, inner, *whole, make_combine(r, *doc.fbar, doc.sections, m),
                          "fbar"};
        return check_polynomial_compound(r, spec, make_covering(doc, m), grounds, budget);
    }
    if (st == "factorized-compound") {
        const FiniteRing& r = one_ring(doc);
        if (doc.polys.empty()) missing(st, "poly");
        std::vector<RingPoly> factors;
        for (const auto& [name, p] : doc.polys) factors.push_back(p);
        return check_factorized(r, factors, make_covering(doc, static_cast<int>(factors.size())),
                                grounds_of(doc), budget);
    }

    if (st == "pd-injectivity") {
        auto f = make_function(doc);
        if (doc.family.empty()) missing(st, "family");
        Verdict v = check_section_injectivity(f, doc.family, budget);
        if (!doc.orders.empty()) {
            CoordinateOrder order = doc.grounds;
            for (const auto& [i, perm] : doc.orders) {
                if (i < 1 || i > static_cast<int>(order.size()))
                    fail("BadOrder", "order slot " + std::to_string(i) + " out of range");
                auto sorted = perm;
                std::sort(sorted.begin(), sorted.end());
                if (sorted != doc.grounds[static_cast<std::size_t>(i - 1)])
                    fail("BadOrder", "order for slot " + std::to_string(i) +
                                         " is not a permutation of ground " + std::to_string(i));
                order[static_cast<std::size_t>(i - 1)] = perm;
            }
            auto base = lex_min_representatives(f, budget);
            std::set<Value> ys;
            for (const auto& [y, tuple] : base.by_value) ys.insert(y);
            auto alt = lex_min_representatives(f, ys, &order, budget);
            if (alt.size() != base.size())
                fail("RepresentativeMismatch",
                     "representative count changed under reordered coordinates");
            v.witness["order_override"] = {{"size", base.size()}, {"sizes_match", true}};
        }
        return v;
    }
    if (st == "uniform-pushforward") return check_uniform_pushforward(make_function(doc), budget);

    fail("UnknownStatement", "no verifier for statement '" + st + "'");
}

}  // namespace

Verdict run_scenario_verify(const ScenarioDoc& doc) {
    if (doc.statement.empty()) missing("(unnamed)", "statement");
    Verdict v = dispatch(doc);
    if (doc.seed) v.seed = *doc.seed;
    return v;
}

SearchScenario scenario_to_search(const ScenarioDoc& doc) {
    if (doc.statement.empty()) fail("MissingKey", "searches need a 'statement'");
    const std::pair<bool, const char*> verify_only[] = {
        {doc.ring.has_value(), "ring"},
        {!doc.grounds.empty(), "ground"},
        {!doc.sets.empty(), "set"},
        {!doc.family.empty(), "family"},
        {!doc.family_b.empty(), "family-b"},
        {!doc.weights_kind.empty(), "weights"},
        {!doc.weight_list.empty(), "weight"},
        {doc.mask_s.has_value(), "mask-s"},
        {doc.mask_t.has_value(), "mask-t"},
        {!doc.marginals.empty(), "marginal"},
        {!doc.atoms.empty(), "atom"},
        {!doc.points.empty(), "point"},
        {!doc.steps.empty(), "step"},
        {!doc.polys.empty(), "poly"},
        {!doc.sections.empty(), "section"},
        {doc.fbar.has_value(), "fbar"},
        {!doc.function_kind.empty(), "function"},
        {!doc.orders.empty(), "order"},
        {doc.k.has_value(), "k"},
        {doc.m.has_value(), "m"},
    };
    for (const auto& [present, key] : verify_only)
        if (present)
            fail("BadScenario", std::string("key '") + key + "' has no meaning in searches");

    SearchScenario sc;
    sc.statement = doc.statement;
    sc.name = doc.name.empty() ? doc.statement : doc.name;
    sc.structures = doc.groups;
    if (doc.min_order) sc.min_order = *doc.min_order;
    if (doc.max_order) sc.max_order = *doc.max_order;
    sc.abelian = doc.abelian;
    if (doc.subset_max) sc.max_subset_size = *doc.subset_max;
    if (doc.set_count) sc.set_count = *doc.set_count;
    if (doc.trials) sc.trials = *doc.trials;
    if (doc.exhaustive) sc.exhaustive = *doc.exhaustive;
    if (doc.seed) sc.seed = *doc.seed;
    if (doc.threads) sc.threads = *doc.threads;
    if (doc.budget) sc.budget = *doc.budget;
    return sc;
}

}  // namespace partdet
