#include "detpsi/report.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

namespace detpsi {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

ojson ring_to_json(const RingSpec& sp) {
    return ojson{{"q", sp.q},
                 {"d", sp.d},
                 {"group", sp.group_orders},
                 {"term_order", sp.term_order}};
}

RingSpec ring_from_json(const ojson& j) {
    RingSpec sp;
    sp.q = j.at("q").get<unsigned>();
    sp.d = j.at("d").get<unsigned>();
    sp.group_orders = j.at("group").get<std::vector<unsigned>>();
    sp.term_order = j.at("term_order").get<std::string>();
    return sp;
}

ojson verdicts_to_json(const VerificationReport& rep) {
    ojson checks = ojson::array();
    for (const CheckResult& c : rep.checks)
        checks.push_back(ojson{{"check", c.check},
                               {"verdict", verdict_name(c.verdict)},
                               {"detail", c.detail}});
    return ojson{{"suite", rep.suite},
                 {"config_line", rep.config},
                 {"seed", rep.seed},
                 {"counts", ojson{{"pass", rep.count(Verdict::pass)},
                                  {"fail", rep.count(Verdict::fail)},
                                  {"hypothesis_not_met", rep.count(Verdict::hypothesis_not_met)}}},
                 {"checks", std::move(checks)}};
}

Verdict verdict_from_name(const std::string& name) {
    if (name == verdict_name(Verdict::pass)) return Verdict::pass;
    if (name == verdict_name(Verdict::fail)) return Verdict::fail;
    if (name == verdict_name(Verdict::hypothesis_not_met)) return Verdict::hypothesis_not_met;
    throw error("report_from_json: unknown verdict '" + name + "'");
}

ojson config_to_json(const RunConfig& cfg) {
    return ojson{{"subcommand", cfg.subcommand},
                 {"ring", ring_to_json(cfg.ring)},
                 {"seed", cfg.seed},
                 {"count", cfg.count},
                 {"primes", cfg.primes},
                 {"max_resample", cfg.max_resample},
                 {"n", cfg.n},
                 {"degs", cfg.degs},
                 {"scenario_file", cfg.scenario_file},
                 {"jobs", cfg.jobs},
                 {"verbose", cfg.verbose}};
}

RunConfig config_from_json(const ojson& j) {
    RunConfig cfg;
    cfg.subcommand = j.at("subcommand").get<std::string>();
    cfg.ring = ring_from_json(j.at("ring"));
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.count = j.at("count").get<unsigned>();
    cfg.primes = j.at("primes").get<std::vector<std::vector<unsigned>>>();
    cfg.max_resample = j.at("max_resample").get<unsigned>();
    cfg.n = j.at("n").get<unsigned>();
    cfg.degs = j.at("degs").get<std::vector<unsigned>>();
    cfg.scenario_file = j.at("scenario_file").get<std::string>();
    cfg.jobs = j.at("jobs").get<unsigned>();
    cfg.verbose = j.at("verbose").get<bool>();
    return cfg;
}

void check_document(const ojson& doc, const char* kind, const char* who) {
    if (!doc.is_object() || doc.value("kind", std::string()) != kind)
        throw error(std::string(who) + ": not a " + kind + " document");
    if (doc.value("schema_version", -1) != kSchemaVersion)
        throw error(std::string(who) + ": unsupported schema version");
}

ojson entries_json(const Ring& r, const Vec& v, unsigned rank) {
    ojson arr = ojson::array();
    for (unsigned i = 0; i < rank; ++i) arr.push_back(poly_to_string(r, vec_component(v, i)));
    return arr;
}

Vec entries_parse(const Ring& r, const ojson& j, unsigned rank, const char* who) {
    if (!j.is_array() || j.size() != rank)
        throw error(std::string(who) + ": entry list has the wrong length");
    Vec v;
    for (unsigned i = 0; i < rank; ++i) {
        RingElem e = parse_elem(r, j.at(i).get<std::string>());
        if (!e.is_zero()) v = vec_add(r, v, vec_from_poly(e.p, i), r.order());
    }
    return v;
}

ojson complex_to_json(const FreeComplex& c) {
    const Ring& r = *c.ring;
    ojson diffs = ojson::array();
    for (std::size_t i = 0; i + 1 < c.ranks.size(); ++i) {
        ojson cols = ojson::array();
        for (const Vec& col : c.diffs[i]) cols.push_back(entries_json(r, col, c.ranks[i + 1]));
        diffs.push_back(std::move(cols));
    }
    return ojson{{"lo", c.lo}, {"ranks", c.ranks}, {"diffs", std::move(diffs)}};
}

FreeComplex complex_from_json(RingPtr ring, const ojson& j, const char* who) {
    const Ring& r = *ring;
    int lo = j.at("lo").get<int>();
    std::vector<unsigned> ranks = j.at("ranks").get<std::vector<unsigned>>();
    const ojson& jd = j.at("diffs");
    if (!jd.is_array() || jd.size() + 1 != std::max<std::size_t>(ranks.size(), 1))
        throw error(std::string(who) + ": differential count does not match ranks");
    std::vector<std::vector<Vec>> diffs;
    for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
        const ojson& jc = jd.at(i);
        if (!jc.is_array() || jc.size() != ranks[i])
            throw error(std::string(who) + ": column count does not match source rank");
        std::vector<Vec> cols;
        for (const ojson& jcol : jc) cols.push_back(entries_parse(r, jcol, ranks[i + 1], who));
        diffs.push_back(std::move(cols));
    }
    return make_complex(std::move(ring), lo, std::move(ranks), std::move(diffs));
}

}  // namespace

std::string verdict_section_json(const VerificationReport& rep) {
    return verdicts_to_json(rep).dump(2);
}

std::string report_document_json(const RunConfig& cfg, const VerificationReport& rep,
                                 double elapsed_seconds) {
    ojson doc{{"schema_version", kSchemaVersion},
              {"kind", "report"},
              {"config", config_to_json(cfg)},
              {"verdicts", verdicts_to_json(rep)},
              {"timing", ojson{{"elapsed_seconds", elapsed_seconds}}}};
    return doc.dump(2) + "\n";
}

namespace {

std::string tsv_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string report_tsv(const VerificationReport& rep) {
    std::ostringstream os;
    os << "check\tverdict\tdetail\n";
    for (const CheckResult& c : rep.checks)
        os << tsv_escape(c.check) << '\t' << verdict_name(c.verdict) << '\t'
           << tsv_escape(c.detail) << '\n';
    return os.str();
}

LoadedReport report_from_json(const std::string& text) {
    try {
        ojson doc = ojson::parse(text);
        check_document(doc, "report", "report_from_json");
        LoadedReport out;
        out.config = config_from_json(doc.at("config"));
        const ojson& jv = doc.at("verdicts");
        out.report.suite = jv.at("suite").get<std::string>();
        out.report.config = jv.at("config_line").get<std::string>();
        out.report.seed = jv.at("seed").get<std::uint64_t>();
        for (const ojson& jc : jv.at("checks"))
            out.report.add(jc.at("check").get<std::string>(),
                           verdict_from_name(jc.at("verdict").get<std::string>()),
                           jc.at("detail").get<std::string>());
        out.elapsed_seconds = doc.at("timing").at("elapsed_seconds").get<double>();
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw error(std::string("report_from_json: ") + e.what());
    }
}

std::string scenario_to_json(const Scenario& s) {
    const Ring& r = *s.ring;
    ojson places = ojson::array();
    for (const LocalDatum& p : s.places) {
        ojson gens = ojson::array();
        for (const RingElem& g : p.j_gens) gens.push_back(re_to_string(r, g));
        places.push_back(ojson{{"index", p.index},
                               {"deg", p.deg},
                               {"j_gens", std::move(gens)},
                               {"complex", complex_to_json(p.complex_l)}});
    }
    unsigned target = s.c_u.ranks.size() >= 2 ? s.c_u.ranks[1] : 0;
    ojson u_cols = ojson::array();
    for (const std::vector<Vec>& cols : s.u_cols) {
        ojson jc = ojson::array();
        for (const Vec& col : cols) jc.push_back(entries_json(r, col, target));
        u_cols.push_back(std::move(jc));
    }
    ojson doc{{"schema_version", kSchemaVersion},
              {"kind", "scenario"},
              {"ring", ring_to_json(r.spec())},
              {"seed", s.seed},
              {"params", ojson{{"q", s.params.q},
                               {"d", s.params.d},
                               {"group", s.params.group_orders},
                               {"n", s.params.n},
                               {"degs", s.params.degs},
                               {"max_resample", s.params.max_resample},
                               {"terms_per_entry", s.params.terms_per_entry},
                               {"max_entry_degree", s.params.max_entry_degree}}},
              {"l", s.l},
              {"resamples_used", s.resamples_used},
              {"kappa", "iota"},
              {"places", std::move(places)},
              {"c_u", complex_to_json(s.c_u)},
              {"u_cols", std::move(u_cols)},
              {"t_sets", s.t_sets}};
    return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    static const char* who = "scenario_from_json";
    try {
        ojson doc = ojson::parse(text);
        check_document(doc, "scenario", who);
        Scenario s;
        s.ring = Ring::make(ring_from_json(doc.at("ring")));
        const Ring& r = *s.ring;
        const ojson& jp = doc.at("params");
        s.params.q = jp.at("q").get<unsigned>();
        s.params.d = jp.at("d").get<unsigned>();
        s.params.group_orders = jp.at("group").get<std::vector<unsigned>>();
        s.params.n = jp.at("n").get<unsigned>();
        s.params.degs = jp.at("degs").get<std::vector<unsigned>>();
        s.params.max_resample = jp.at("max_resample").get<unsigned>();
        s.params.terms_per_entry = jp.at("terms_per_entry").get<unsigned>();
        s.params.max_entry_degree = jp.at("max_entry_degree").get<unsigned>();
        DETPSI_CHECK(s.params.q == r.q() && s.params.d == r.d() &&
                         s.params.group_orders == r.spec().group_orders,
                     "scenario_from_json: params disagree with the ring spec");
        s.seed = doc.at("seed").get<std::uint64_t>();
        s.l = doc.at("l").get<unsigned>();
        s.resamples_used = doc.at("resamples_used").get<unsigned>();
        DETPSI_CHECK(doc.at("kappa").get<std::string>() == "iota",
                     "scenario_from_json: unsupported twist");
        s.kappa = involution_iota(r);

        for (const ojson& jpl : doc.at("places")) {
            LocalDatum p;
            p.index = jpl.at("index").get<unsigned>();
            p.deg = jpl.at("deg").get<unsigned>();
            DETPSI_CHECK(p.index == s.places.size(), "scenario_from_json: place indices not serial");
            for (const ojson& jg : jpl.at("j_gens"))
                p.j_gens.push_back(parse_elem(r, jg.get<std::string>()));
            DETPSI_CHECK(p.j_gens.size() == std::size_t(p.deg) + 1,
                         "scenario_from_json: place generator count must be deg + 1");
            p.complex_l = complex_from_json(s.ring, jpl.at("complex"), who);
            DETPSI_CHECK(p.complex_l.lo == 1 && p.complex_l.ranks ==
                             std::vector<unsigned>({p.deg + 1, 1}),
                         "scenario_from_json: place complex has the wrong shape");
            s.places.push_back(std::move(p));
        }

        s.c_u = complex_from_json(s.ring, doc.at("c_u"), who);
        DETPSI_CHECK(s.c_u.lo == 1 && s.c_u.ranks.size() == 2,
                     "scenario_from_json: global complex must be two-term in degrees 1, 2");
        unsigned total = 0;
        for (const LocalDatum& p : s.places) total += p.deg;
        (void)total;
        DETPSI_CHECK(s.c_u.ranks[1] == s.c_u.ranks[0] + s.l,
                     "scenario_from_json: global complex ranks disagree with l");

        const ojson& ju = doc.at("u_cols");
        DETPSI_CHECK(ju.is_array() && ju.size() == s.places.size(),
                     "scenario_from_json: one u-column block per place required");
        for (std::size_t j = 0; j < s.places.size(); ++j) {
            const ojson& jc = ju.at(j);
            DETPSI_CHECK(jc.is_array() && jc.size() == std::size_t(s.places[j].deg) + 1,
                         "scenario_from_json: u-column count must match the place rank");
            std::vector<Vec> cols;
            for (const ojson& jcol : jc) cols.push_back(entries_parse(r, jcol, s.c_u.ranks[1], who));
            s.u_cols.push_back(std::move(cols));
        }

        s.t_sets = doc.at("t_sets").get<std::vector<std::vector<unsigned>>>();
        for (const auto& t : s.t_sets)
            for (unsigned j : t)
                DETPSI_CHECK(j < s.places.size(), "scenario_from_json: comparison set index range");
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw error(std::string(who) + ": " + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("write_file_atomic: cannot open " + tmp.string());
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out) throw error("write_file_atomic: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw error("write_file_atomic: rename failed: " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("read_file: cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (!in.good() && !in.eof()) throw error("read_file: read failed for " + path);
    return os.str();
}

}  // namespace detpsi
