#pragma once

// JSON problem files and reports. Requires nlohmann/json on the include path.

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "credal/acceptance.hpp"
#include "credal/sequence.hpp"

namespace credal {

using json = nlohmann::ordered_json;

/// A level written out in a problem file: statements read through
/// level_from_body, then explicit per-outcome overrides on top.
struct LevelSpec {
    std::size_t index = 0;
    double error = 0.0;
    std::vector<Statement> statements;
    Assignments overrides;

    friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

enum class AcceptanceRule { threshold, next_most_probable };

/// Statements relative to K_init plus the rule that generates the K-sequence.
struct KnowledgeBlock {
    AcceptanceRule rule = AcceptanceRule::threshold;
    std::vector<double> error_levels;
    std::vector<Statement> statements;

    friend bool operator==(const KnowledgeBlock&, const KnowledgeBlock&) = default;
};

struct ProblemFile {
    DecisionProblem problem;
    std::vector<LevelSpec> levels;
    std::optional<KnowledgeBlock> knowledge;
    ReferenceClassTable references;
    std::optional<ToleranceSpec> tolerance;

    friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

namespace detail {

class Reader {
public:
    explicit Reader(std::string path) : path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw SchemaError((path_.empty() ? std::string("<root>") : path_) + ": " + what);
    }

    Reader at(const std::string& key) const { return Reader(path_.empty() ? key : path_ + "." + key); }
    Reader at(std::size_t i) const { return Reader(path_ + "[" + std::to_string(i) + "]"); }

    const json& field(const json& obj, const std::string& key) const {
        if (!obj.is_object()) fail("expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail("missing field '" + key + "'");
        return *it;
    }

    void only(const json& obj, std::initializer_list<std::string_view> keys) const {
        if (!obj.is_object()) fail("expected an object");
        for (const auto& [k, _] : obj.items())
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail("unknown field '" + k + "'");
    }

    std::string string(const json& v) const {
        if (!v.is_string()) fail("expected a string");
        auto s = v.get<std::string>();
        if (s.empty()) fail("expected a non-empty string");
        return s;
    }

    double number(const json& v) const {
        if (!v.is_number()) fail("expected a number");
        return v.get<double>();
    }

    std::size_t count(const json& v) const {
        if (!v.is_number_unsigned()) fail("expected a non-negative integer");
        return v.get<std::size_t>();
    }

    const json& array(const json& v) const {
        if (!v.is_array()) fail("expected an array");
        return v;
    }

    ProbInterval prob(const json& v) const {
        if (!v.is_array() || v.size() != 2) fail("expected a probability interval [lo, hi]");
        const double lo = at(0).number(v[0]);
        const double hi = at(1).number(v[1]);
        try {
            return {lo, hi};
        } catch (const InvalidInterval& e) {
            fail(e.what());
        }
    }

private:
    std::string path_;
};

inline Statement read_statement(const Reader& r, const json& v) {
    Statement s;
    s.id = r.at("id").string(r.field(v, "id"));
    if (v.contains("prob")) {
        s.prob_given_init = r.at("prob").number(v["prob"]);
        if (!(s.prob_given_init >= 0.0 && s.prob_given_init <= 1.0)) r.at("prob").fail("must lie in [0, 1]");
    }
    const auto kind = r.at("kind").string(r.field(v, "kind"));
    if (kind == "event-interval") {
        r.only(v, {"id", "kind", "prob", "event", "interval"});
        s.content = EventInterval{r.at("event").string(r.field(v, "event")),
                                  r.at("interval").prob(r.field(v, "interval"))};
    } else if (kind == "condition") {
        r.only(v, {"id", "kind", "prob", "event"});
        s.content = Condition{r.at("event").string(r.field(v, "event"))};
    } else if (kind == "membership") {
        r.only(v, {"id", "kind", "prob", "item", "class"});
        s.content = ClassMembership{r.at("item").string(r.field(v, "item")),
                                    r.at("class").string(r.field(v, "class"))};
    } else if (kind == "frequency") {
        r.only(v, {"id", "kind", "prob", "class", "target", "interval"});
        s.content = ClassFrequency{r.at("class").string(r.field(v, "class")),
                                   r.at("target").string(r.field(v, "target")),
                                   r.at("interval").prob(r.field(v, "interval"))};
    } else {
        r.at("kind").fail("unknown statement kind '" + kind + "'");
    }
    return s;
}

inline std::vector<Statement> read_statements(const Reader& r, const json& v) {
    std::vector<Statement> out;
    const auto& arr = r.array(v);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read_statement(r.at(i), arr[i]));
    return out;
}

inline Assignments read_overrides(const Reader& r, const json& v) {
    if (!v.is_object()) r.fail("expected an object of act -> outcome -> [lo, hi]");
    Assignments out;
    for (const auto& [act, boxes] : v.items()) {
        const auto ra = r.at(act);
        if (!boxes.is_object()) ra.fail("expected an object of outcome -> [lo, hi]");
        for (const auto& [label, box] : boxes.items()) out[act][label] = ra.at(label).prob(box);
    }
    return out;
}

inline std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

} // namespace detail

inline ProblemFile problem_file_from_json(const json& doc) {
    using detail::Reader;
    const Reader root("");
    root.only(doc, {"name", "acts", "levels", "knowledge", "reference_classes", "tolerance"});

    ProblemFile file;
    file.problem.name = root.at("name").string(root.field(doc, "name"));
    const auto& acts = root.array(root.field(doc, "acts"));
    const Reader ra = root.at("acts");
    for (std::size_t i = 0; i < acts.size(); ++i) {
        const auto r = ra.at(i);
        r.only(acts[i], {"name", "outcomes"});
        Act act{r.at("name").string(r.field(acts[i], "name")), {}};
        const auto& outs = r.array(r.field(acts[i], "outcomes"));
        for (std::size_t j = 0; j < outs.size(); ++j) {
            const auto ro = r.at("outcomes").at(j);
            ro.only(outs[j], {"label", "utility", "prob"});
            Outcome o;
            o.label = ro.at("label").string(ro.field(outs[j], "label"));
            o.utility = ro.at("utility").number(ro.field(outs[j], "utility"));
            if (outs[j].contains("prob")) o.prob = ro.at("prob").prob(outs[j]["prob"]);
            act.outcomes.push_back(std::move(o));
        }
        file.problem.acts.push_back(std::move(act));
    }
    try {
        validate(file.problem);
    } catch (const InvalidArgument& e) {
        ra.fail(e.what());
    }

    if (doc.contains("levels")) {
        const Reader rl = root.at("levels");
        const auto& levels = rl.array(doc["levels"]);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto r = rl.at(i);
            r.only(levels[i], {"index", "error", "statements", "overrides"});
            LevelSpec spec;
            spec.index = levels[i].contains("index") ? r.at("index").count(levels[i]["index"]) : i;
            spec.error = r.at("error").number(r.field(levels[i], "error"));
            if (!(spec.error >= 0.0 && spec.error <= 1.0)) r.at("error").fail("must lie in [0, 1]");
            if (levels[i].contains("statements"))
                spec.statements = detail::read_statements(r.at("statements"), levels[i]["statements"]);
            if (levels[i].contains("overrides"))
                spec.overrides = detail::read_overrides(r.at("overrides"), levels[i]["overrides"]);
            file.levels.push_back(std::move(spec));
        }
    }

    if (doc.contains("knowledge")) {
        const Reader r = root.at("knowledge");
        const auto& k = doc["knowledge"];
        r.only(k, {"rule", "error_levels", "statements"});
        KnowledgeBlock block;
        const auto rule = r.at("rule").string(r.field(k, "rule"));
        if (rule == "threshold") block.rule = AcceptanceRule::threshold;
        else if (rule == "next-most-probable") block.rule = AcceptanceRule::next_most_probable;
        else r.at("rule").fail("unknown acceptance rule '" + rule + "'");
        if (k.contains("error_levels")) {
            const auto& lv = r.at("error_levels").array(k["error_levels"]);
            for (std::size_t i = 0; i < lv.size(); ++i)
                block.error_levels.push_back(r.at("error_levels").at(i).number(lv[i]));
        }
        if (block.rule == AcceptanceRule::threshold && block.error_levels.empty())
            r.at("error_levels").fail("threshold rule needs at least one error level");
        block.statements = detail::read_statements(r.at("statements"), r.field(k, "statements"));
        file.knowledge = std::move(block);
    }

    if (doc.contains("reference_classes")) {
        const Reader r = root.at("reference_classes");
        const auto& rc = doc["reference_classes"];
        r.only(rc, {"entries", "more_specific"});
        if (rc.contains("entries")) {
            const auto& entries = r.at("entries").array(rc["entries"]);
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const auto re = r.at("entries").at(i);
                re.only(entries[i], {"class", "target", "interval"});
                file.references.entries.push_back({re.at("class").string(re.field(entries[i], "class")),
                                                   re.at("target").string(re.field(entries[i], "target")),
                                                   re.at("interval").prob(re.field(entries[i], "interval"))});
            }
        }
        if (rc.contains("more_specific")) {
            const auto& pairs = r.at("more_specific").array(rc["more_specific"]);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto rp = r.at("more_specific").at(i);
                if (!pairs[i].is_array() || pairs[i].size() != 2) rp.fail("expected [narrower, broader]");
                file.references.more_specific.emplace_back(rp.at(0).string(pairs[i][0]),
                                                           rp.at(1).string(pairs[i][1]));
            }
        }
        try {
            file.references.closure();
        } catch (const Error& e) {
            r.fail(e.what());
        }
    }

    if (doc.contains("tolerance")) {
        const Reader r = root.at("tolerance");
        const auto& t = doc["tolerance"];
        const auto mode = r.at("mode").string(r.field(t, "mode"));
        if (mode == "explicit") {
            r.only(t, {"mode", "max_error"});
            const double e = r.at("max_error").number(r.field(t, "max_error"));
            if (!(e >= 0.0 && e <= 1.0)) r.at("max_error").fail("must lie in [0, 1]");
            file.tolerance = ToleranceSpec::explicit_error(e);
        } else if (mode == "odds-derived") {
            r.only(t, {"mode"});
            file.tolerance = ToleranceSpec::odds_derived();
        } else {
            r.at("mode").fail("unknown tolerance mode '" + mode + "'");
        }
    }
    return file;
}

/// Parses a problem file. Syntax errors report the line, schema errors the field path.
inline ProblemFile parse_problem_file(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SchemaError("line " + std::to_string(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                          ": " + e.what());
    }
    return problem_file_from_json(doc);
}

inline ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    try {
        return parse_problem_file(os.str());
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

inline json to_json(const ProbInterval& p) { return json::array({p.lo(), p.hi()}); }

inline json to_json(const Statement& s) {
    json j;
    j["id"] = s.id;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, EventInterval>) {
                j["kind"] = "event-interval";
                j["event"] = c.event;
                j["interval"] = to_json(c.interval);
            } else if constexpr (std::is_same_v<T, Condition>) {
                j["kind"] = "condition";
                j["event"] = c.event;
            } else if constexpr (std::is_same_v<T, ClassMembership>) {
                j["kind"] = "membership";
                j["item"] = c.item;
                j["class"] = c.reference_class;
            } else {
                j["kind"] = "frequency";
                j["class"] = c.reference_class;
                j["target"] = c.target;
                j["interval"] = to_json(c.interval);
            }
        },
        s.content);
    j["prob"] = s.prob_given_init;
    return j;
}

inline json to_json(const Assignments& a) {
    json j = json::object();
    for (const auto& [act, boxes] : a) {
        json b = json::object();
        for (const auto& [label, box] : boxes) b[label] = to_json(box);
        j[act] = std::move(b);
    }
    return j;
}

inline json to_json(const ProblemFile& f) {
    json j;
    j["name"] = f.problem.name;
    j["acts"] = json::array();
    for (const auto& act : f.problem.acts) {
        json a;
        a["name"] = act.name;
        a["outcomes"] = json::array();
        for (const auto& o : act.outcomes)
            a["outcomes"].push_back({{"label", o.label}, {"utility", o.utility}, {"prob", to_json(o.prob)}});
        j["acts"].push_back(std::move(a));
    }
    if (!f.levels.empty()) {
        j["levels"] = json::array();
        for (const auto& l : f.levels) {
            json lj;
            lj["index"] = l.index;
            lj["error"] = l.error;
            if (!l.statements.empty()) {
                lj["statements"] = json::array();
                for (const auto& s : l.statements) lj["statements"].push_back(to_json(s));
            }
            if (!l.overrides.empty()) lj["overrides"] = to_json(l.overrides);
            j["levels"].push_back(std::move(lj));
        }
    }
    if (f.knowledge) {
        json k;
        k["rule"] = f.knowledge->rule == AcceptanceRule::threshold ? "threshold" : "next-most-probable";
        if (!f.knowledge->error_levels.empty()) k["error_levels"] = f.knowledge->error_levels;
        k["statements"] = json::array();
        for (const auto& s : f.knowledge->statements) k["statements"].push_back(to_json(s));
        j["knowledge"] = std::move(k);
    }
    if (!f.references.entries.empty() || !f.references.more_specific.empty()) {
        json r;
        r["entries"] = json::array();
        for (const auto& e : f.references.entries)
            r["entries"].push_back({{"class", e.reference_class}, {"target", e.target}, {"interval", to_json(e.interval)}});
        r["more_specific"] = json::array();
        for (const auto& [a, b] : f.references.more_specific) r["more_specific"].push_back(json::array({a, b}));
        j["reference_classes"] = std::move(r);
    }
    if (f.tolerance) {
        if (f.tolerance->mode == ToleranceSpec::Mode::explicit_error)
            j["tolerance"] = {{"mode", "explicit"}, {"max_error", f.tolerance->max_error}};
        else
            j["tolerance"] = {{"mode", "odds-derived"}};
    }
    return j;
}

inline json to_json(const CredalSequence& seq) {
    json j = json::array();
    for (const auto& l : seq.levels)
        j.push_back({{"index", l.index}, {"error", l.error}, {"assignments", to_json(l.assignments)}});
    return j;
}

inline json to_json(const UtilityTable& eu) {
    json j = json::array();
    for (const auto& a : eu) j.push_back({{"act", a.act}, {"lo", a.eu.lo()}, {"hi", a.eu.hi()}});
    return j;
}

inline json to_json(const DecisionReport& r) {
    json j;
    j["status"] = to_string(r.status);
    j["act"] = r.act ? json(*r.act) : json(nullptr);
    j["level"] = r.level ? json(*r.level) : json(nullptr);
    j["error"] = r.error ? json(*r.error) : json(nullptr);
    j["ambiguous"] = r.ambiguous;
    j["tolerance"] = r.tolerance;
    j["trace"] = json::array();
    for (const auto& row : r.trace) {
        j["trace"].push_back({{"index", row.index},
                              {"error", row.error},
                              {"utilities", to_json(row.utilities)},
                              {"maximal", row.maximal.acts}});
    }
    return j;
}

// ---------------------------------------------------------------------------
// Building the credal sequence
// ---------------------------------------------------------------------------

namespace detail {

inline CredalLevel merge_overrides(CredalLevel level, const Assignments& overrides) {
    for (const auto& [act, boxes] : overrides) {
        for (const auto& [label, box] : boxes) {
            auto& slot = level.assignments[act];
            auto [it, fresh] = slot.emplace(label, box);
            if (!fresh && !(it->second == box))
                throw ConflictingOverride("level " + std::to_string(level.index) + ": override for '" + act +
                                          "." + label + "' contradicts the level's statements");
        }
    }
    return level;
}

} // namespace detail

/// Levels generated from the knowledge block, then asserted levels, ordered by
/// error. Without either, one error-free level holding the declared boxes.
inline CredalSequence build_sequence(const ProblemFile& f) {
    std::vector<CredalLevel> levels;
    if (f.knowledge) {
        const auto bodies = f.knowledge->rule == AcceptanceRule::threshold
                                ? accept_threshold(f.knowledge->statements, f.knowledge->error_levels)
                                : accept_next_most_probable(f.knowledge->statements);
        for (const auto& k : bodies) levels.push_back(level_from_body(k, f.problem, f.references));
    }
    for (const auto& spec : f.levels) {
        BodyOfKnowledge k{spec.index, spec.error, spec.statements};
        levels.push_back(detail::merge_overrides(level_from_body(k, f.problem, f.references), spec.overrides));
    }
    if (levels.empty()) levels.push_back({0, 0.0, {}});

    if (f.knowledge && !f.levels.empty()) {
        std::stable_sort(levels.begin(), levels.end(),
                         [](const CredalLevel& a, const CredalLevel& b) { return a.error < b.error; });
        for (std::size_t i = 0; i < levels.size(); ++i) levels[i].index = i;
    }
    CredalSequence seq{std::move(levels)};
    seq.validate();
    for (const auto& level : seq.levels) apply_level(f.problem, level);
    return seq;
}

} // namespace credal
