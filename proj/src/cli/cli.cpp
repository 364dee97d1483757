#include "mfkit/cli/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mfkit/clifford/end_algebra.hpp"
#include "mfkit/error.hpp"
#include "mfkit/exactalg/parse.hpp"
#include "mfkit/hochschild/hkr.hpp"
#include "mfkit/hochschild/jacobian.hpp"
#include "mfkit/hochschild/twisted.hpp"
#include "mfkit/homalg/ext.hpp"
#include "mfkit/mfcore/constructions.hpp"
#include "mfkit/mfcore/io.hpp"

namespace mfkit::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string field;
    std::optional<std::int64_t> D_max, N_max, S, K;
    std::string weights;
    std::uint64_t seed = 1;
    std::string vars;
    int cochain_sign = -1;
    bool table = false;
};

// Verb result: payload keys plus whether every sweep stabilized.
struct Result {
    json body = json::object();
    json certificates = json::object();
    bool stabilized = true;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorCode::Precondition, "bad " + what + " '" + s + "'");
}

RunConfig make_config(const Options& o, const std::map<std::string, std::string>& env) {
    RunConfig cfg;
    std::string field = o.field;
    if (field.empty()) {
        auto it = env.find("MFKIT_FIELD");
        if (it != env.end()) field = it->second;
    }
    cfg.field = Field::parse(field);
    if (o.D_max) {
        cfg.D_max = *o.D_max;
    } else if (auto it = env.find("MFKIT_DMAX"); it != env.end()) {
        cfg.D_max = parse_int(it->second, "MFKIT_DMAX");
    }
    auto bound = [](const std::optional<std::int64_t>& v, std::size_t& dst, const char* name) {
        if (!v) return;
        if (*v < 1) throw Error(ErrorCode::Precondition, std::string(name) + " must be >= 1");
        dst = static_cast<std::size_t>(*v);
    };
    bound(o.N_max, cfg.N_max, "N_max");
    bound(o.S, cfg.S, "S");
    bound(o.K, cfg.K, "K");
    if (cfg.D_max < 1) throw Error(ErrorCode::Precondition, "D_max must be >= 1");
    if (!o.weights.empty()) {
        Weights w;
        for (const auto& s : split_list(o.weights)) {
            std::int64_t v = parse_int(s, "weight");
            if (v < 1) throw Error(ErrorCode::Precondition, "weights must be positive");
            w.push_back(v);
        }
        cfg.weights = w;
    }
    if (o.cochain_sign != 1 && o.cochain_sign != -1) throw Error(ErrorCode::Precondition, "cochain sign must be 1 or -1");
    cfg.cochain_sign = o.cochain_sign;
    cfg.seed = o.seed;
    return cfg;
}

json config_json(const RunConfig& cfg) {
    json j;
    j["field"] = cfg.field.name();
    j["D_max"] = cfg.D_max;
    j["N_max"] = cfg.N_max;
    j["S"] = cfg.S;
    j["K"] = cfg.K;
    j["window"] = cfg.window;
    j["weights"] = cfg.weights ? json(*cfg.weights) : json(nullptr);
    j["cochain_sign"] = cfg.cochain_sign;
    j["seed"] = cfg.seed;
    return j;
}

json dims_json(const GradedDims& d) { return json::array({d.even, d.odd}); }

void put_ext(Result& r, const ExtResult& e, const std::string& name) {
    r.body["even"] = e.dims.even;
    r.body["odd"] = e.dims.odd;
    r.body["stabilized"] = e.stabilized;
    r.body["D_used"] = e.D_used;
    r.certificates[name] = {{"stabilized", e.stabilized}, {"D_used", e.D_used}};
    r.stabilized = r.stabilized && e.stabilized;
}

void put_count(Result& r, const CountResult& c, const std::string& key) {
    r.body[key] = c.value;
    r.body["stabilized"] = c.stabilized;
    r.body["D_used"] = c.D_used;
    r.certificates[key] = {{"stabilized", c.stabilized}, {"D_used", c.D_used}};
    r.stabilized = c.stabilized;
}

json module_json(const BetaModule& m) {
    json t = json::array();
    for (const auto& [order, parity] : m.torsion) t.push_back({order, parity});
    json j;
    j["free_rank"] = {m.free_rank[0], m.free_rank[1]};
    j["torsion"] = t;
    j["determined"] = m.determined;
    j["note"] = m.note;
    return j;
}

class Session {
public:
    Session(const RunConfig& cfg, const std::vector<std::string>& vars) : cfg_(cfg), vars_(vars) {}

    MultiPoly poly(const std::string& src) const { return parse_poly(src, opts()); }

    // Descriptors: `stab <poly>`, `trivial <poly>` or an MF file path. With
    // shared = true all polynomials are parsed into one ring.
    std::vector<MatrixFactorization> mfs(const std::vector<std::string>& tokens, bool shared) const {
        struct Item {
            std::string kind, arg;
        };
        std::vector<Item> items;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const std::string& t = tokens[i];
            if (t == "stab" || t == "trivial") {
                if (i + 1 >= tokens.size()) throw Error(ErrorCode::Precondition, "'" + t + "' needs a polynomial");
                items.push_back({t, tokens[++i]});
            } else {
                items.push_back({"file", t});
            }
        }
        std::vector<std::optional<MatrixFactorization>> built(items.size());
        ParseOptions po = opts();
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (items[i].kind != "file") continue;
            built[i] = read_mf_file(items[i].arg, cfg_.field);
            if (shared && vars_.empty() && po.vars.empty()) po.vars = built[i]->ring()->names();
        }
        std::vector<std::string> srcs;
        for (const auto& it : items)
            if (it.kind != "file") srcs.push_back(it.arg);
        std::vector<MultiPoly> polys;
        if (shared) {
            polys = parse_polys(srcs, po);
        } else {
            for (const auto& s : srcs) polys.push_back(parse_poly(s, po));
        }
        std::size_t next = 0;
        std::vector<MatrixFactorization> out;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (built[i]) {
                out.push_back(*built[i]);
                continue;
            }
            const MultiPoly& f = polys[next++];
            out.push_back(items[i].kind == "stab" ? stabilized_residue_field(f) : trivial_mf(f));
        }
        return out;
    }

private:
    ParseOptions opts() const {
        ParseOptions po;
        po.field = cfg_.field;
        po.vars = vars_;
        po.allow_new_vars = vars_.empty();
        return po;
    }

    RunConfig cfg_;
    std::vector<std::string> vars_;
};

void require_count(std::size_t got, std::size_t n, const std::string& verb) {
    if (got != n)
        throw Error(ErrorCode::Precondition, verb + " expects " + std::to_string(n) + " factorization(s), got " +
                                                 std::to_string(got));
}

json mf_output(Result& r, const MatrixFactorization& m, const std::string& out) {
    r.body["rank"] = m.rank();
    r.body["potential"] = m.potential().to_string();
    r.body["mf"] = mf_to_json(m);
    if (!out.empty()) {
        write_mf_file(m, out);
        r.body["written"] = out;
    }
    return r.body;
}

QuadraticForm read_form(const std::string& quadric, const std::string& gram, const Session& s, const Field& field,
                        std::vector<std::string>& names) {
    if (quadric.empty() == gram.empty()) throw Error(ErrorCode::Precondition, "give exactly one of --quadric, --gram");
    if (!quadric.empty()) {
        MultiPoly q = s.poly(quadric);
        names = q.ring()->names();
        return QuadraticForm::from_quadric(q);
    }
    json g;
    try {
        g = json::parse(gram);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad --gram: ") + e.what());
    }
    if (!g.is_array() || g.empty()) throw Error(ErrorCode::Parse, "--gram must be a non-empty array of rows");
    std::size_t n = g.size();
    Matrix Q(n, n, field);
    for (std::size_t i = 0; i < n; ++i) {
        if (!g[i].is_array() || g[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "--gram must be square");
        for (std::size_t j = 0; j < n; ++j) {
            const json& e = g[i][j];
            std::string txt = e.is_string() ? e.get<std::string>() : e.dump();
            try {
                Q(i, j) = Scalar(mpq_class(txt), field);
            } catch (const std::invalid_argument&) {
                throw Error(ErrorCode::Parse, "bad --gram entry '" + txt + "'");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
    return QuadraticForm(Q);
}

json gram_json(const QuadraticForm& q) {
    json g = json::array();
    for (std::size_t i = 0; i < q.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < q.dim(); ++j) row.push_back(q(i, j).to_string());
        g.push_back(row);
    }
    return g;
}

json end_json(const EndAlgebra& e, const std::vector<std::string>& names) {
    json dims = json::array();
    for (const auto& d : e.dims) dims.push_back(dims_json(d));
    json products = json::object();
    for (const auto& [ab, v] : e.products)
        products["e" + std::to_string(ab.first + 1) + "*e" + std::to_string(ab.second + 1)] = v.to_string();
    json j;
    j["dims"] = dims;
    j["products"] = products;
    j["generators"] = names;
    j["identities"] = {{"d_squared", e.identities.d_squared},
                       {"anticommute", e.identities.anticommute},
                       {"clifford", e.identities.clifford}};
    return j;
}

} // namespace

std::string render_table(const json& doc) {
    std::vector<std::pair<std::string, std::string>> rows;
    std::size_t width = 0;
    for (const auto& [k, v] : doc.items()) {
        if (k == "provenance") continue;
        rows.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
        width = std::max(width, k.size());
    }
    std::string out;
    for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    return out;
}

Outcome run(const std::vector<std::string>& args, const std::map<std::string, std::string>& env) {
    CLI::App app{"Matrix factorizations, Ext and Hochschild invariants over exact fields", "mfkit"};
    app.fallthrough();
    app.require_subcommand(1);

    Options o;
    app.add_option("--field", o.field, "Q or Fp:<p> (env MFKIT_FIELD)");
    app.add_option("--dmax", o.D_max, "polynomial degree bound (env MFKIT_DMAX)");
    app.add_option("--nmax", o.N_max, "beta-truncation levels");
    app.add_option("--S", o.S, "local-cohomology exponent");
    app.add_option("--K", o.K, "u-truncation for cyclic homology");
    app.add_option("--weights", o.weights, "w1,w2,... quasi-homogeneous weights");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--vars", o.vars, "fixed variable order x,y,...");
    app.add_option("--cochain-sign", o.cochain_sign, "sign of the contraction i_df (1 or -1)");
    app.add_flag("--table", o.table, "aligned text instead of JSON");

    std::vector<std::string> pos;
    std::string out, quadric, gram, over = "tate";
    bool self = false, beta = false;
    std::size_t length = 3;
    std::int64_t degree = 3;

    // Each verb reads its parsed arguments and fills a Result.
    std::map<std::string, std::function<Result(const RunConfig&, const Session&)>> verbs;
    std::map<std::string, CLI::App*> subs;
    auto verb = [&](const std::string& name, const std::string& help, const std::string& arg_help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("args", pos, arg_help);
        subs[name] = s;
        return s;
    };
    auto one_poly = [&](const std::string& name) -> const std::string& {
        if (pos.size() != 1) throw Error(ErrorCode::Precondition, name + " expects one polynomial");
        return pos[0];
    };

    verb("validate", "check an MF file", "MF file")->require_option(0);
    verbs["validate"] = [&](const RunConfig& cfg, const Session&) {
        if (pos.size() != 1) throw Error(ErrorCode::Precondition, "validate expects one MF file");
        MatrixFactorization m = read_mf_file(pos[0], cfg.field, false);
        ValidationReport rep = validate(m);
        if (!rep.ok) throw Error(ErrorCode::InvalidFactorization, rep.message);
        Result r;
        r.body["valid"] = true;
        r.body["rank"] = m.rank();
        r.body["potential"] = m.potential().to_string();
        return r;
    };

    verb("milnor", "local Milnor number at the origin", "polynomial");
    verbs["milnor"] = [&](const RunConfig& cfg, const Session& s) {
        Result r;
        put_count(r, milnor_number(s.poly(one_poly("milnor")), cfg), "milnor");
        return r;
    };

    verb("global-milnor", "dimension of the global Jacobian ring", "polynomial");
    verbs["global-milnor"] = [&](const RunConfig& cfg, const Session& s) {
        Result r;
        put_count(r, global_jacobian_dim(s.poly(one_poly("global-milnor")), cfg), "global_milnor");
        return r;
    };

    CLI::App* ext = verb("ext", "Ext between two factorizations", "MF descriptors: stab <f> | trivial <f> | file");
    ext->add_flag("--self", self, "second argument equals the first");
    ext->add_option("--over", over, "tate (k((beta))) or k")->check(CLI::IsMember({"tate", "k"}));
    verbs["ext"] = [&](const RunConfig& cfg, const Session& s) {
        auto m = s.mfs(pos, true);
        if (self && m.size() == 1) m.push_back(m[0]);
        require_count(m.size(), 2, "ext");
        Result r;
        put_ext(r, over == "k" ? ext_k(m[0], m[1], cfg) : ext_tate(m[0], m[1], cfg), "ext");
        r.body["over"] = over;
        return r;
    };

    CLI::App* eb = verb("ext-beta", "Ext over k[[beta]] from beta-truncations", "MF descriptors");
    eb->add_flag("--self", self, "second argument equals the first");
    verbs["ext-beta"] = [&](const RunConfig& cfg, const Session& s) {
        auto m = s.mfs(pos, true);
        if (self && m.size() == 1) m.push_back(m[0]);
        require_count(m.size(), 2, "ext-beta");
        ExtBetaResult e = ext_beta(m[0], m[1], cfg);
        Result r;
        r.body = module_json(e.module);
        json dims = json::array();
        for (const auto& d : e.dims) dims.push_back(dims_json(d));
        r.body["dims"] = dims;
        r.body["law_holds"] = e.law_holds;
        r.body["stabilized"] = e.stabilized;
        r.body["D_used"] = e.D_used;
        r.body["N_used"] = e.N_used;
        r.certificates["ext_beta"] = {{"stabilized", e.stabilized}, {"D_used", e.D_used}, {"N_used", e.N_used}};
        r.stabilized = e.stabilized;
        return r;
    };

    CLI::App* hh = verb("hh", "Hochschild homology via (forms, -df wedge)", "polynomial");
    hh->add_flag("--beta", beta, "over k[[beta]] with supports at the origin");
    verbs["hh"] = [&](const RunConfig& cfg, const Session& s) {
        MultiPoly f = s.poly(one_poly("hh"));
        Result r;
        if (!beta) {
            put_ext(r, hh_tate(f, cfg), "hh");
            return r;
        }
        HHBetaResult h = hh_beta(f, cfg);
        r.body = module_json(h.module);
        r.body["stage_homology"] = dims_json(h.stage_homology);
        r.body["order1_torsion"] = h.order1_torsion;
        r.body["torsion_bounded"] = h.torsion_bounded;
        r.body["stabilized"] = h.stabilized;
        r.body["S_used"] = h.S_used;
        r.certificates["hh_beta"] = {{"stabilized", h.stabilized}, {"S_used", h.S_used}};
        r.stabilized = h.stabilized;
        return r;
    };

    verb("hh-cochain", "Hochschild cohomology via (polyvectors, i_df)", "polynomial");
    verbs["hh-cochain"] = [&](const RunConfig& cfg, const Session& s) {
        Result r;
        put_ext(r, hh_cochain_tate(s.poly(one_poly("hh-cochain")), cfg), "hh_cochain");
        return r;
    };

    verb("hc", "cyclic homology for u-truncations K = 1..K", "polynomial");
    verbs["hc"] = [&](const RunConfig& cfg, const Session& s) {
        auto levels = hc_tate(s.poly(one_poly("hc")), cfg);
        Result r;
        json arr = json::array();
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const ExtResult& e = levels[k];
            arr.push_back({{"K", k + 1},
                           {"even", e.dims.even},
                           {"odd", e.dims.odd},
                           {"stabilized", e.stabilized},
                           {"D_used", e.D_used}});
            r.stabilized = r.stabilized && e.stabilized;
        }
        r.body["levels"] = arr;
        r.body["stabilized"] = r.stabilized;
        r.certificates["hc"] = arr;
        return r;
    };

    CLI::App* hkr = verb("hkr-check", "HKR(B w) = -df wedge HKR(w) on all short words", "polynomial");
    hkr->add_option("--length", length, "maximal word length");
    hkr->add_option("--degree", degree, "maximal monomial degree");
    verbs["hkr-check"] = [&](const RunConfig&, const Session& s) {
        HkrCheck c = hkr_intertwine_check(s.poly(one_poly("hkr-check")), length, degree);
        Result r;
        r.body["ok"] = c.ok;
        r.body["words"] = c.words;
        r.body["counterexample"] = c.counterexample;
        return r;
    };

    verb("socle", "residue pairing on the Jacobian ring", "polynomial");
    verbs["socle"] = [&](const RunConfig& cfg, const Session& s) {
        MultiPoly f = s.poly(one_poly("socle"));
        SoclePairing p = socle_pairing(f, cfg.weights);
        auto mono = [&](const Monomial& m) { return MultiPoly::term(f.ring(), m, Scalar(1)).to_string(); };
        Result r;
        json basis = json::array(), mat = json::array();
        for (const auto& m : p.basis) basis.push_back(mono(m));
        for (std::size_t i = 0; i < p.matrix.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < p.matrix.cols(); ++j) row.push_back(p.matrix(i, j).to_string());
            mat.push_back(row);
        }
        r.body["mu"] = p.basis.size();
        r.body["basis"] = basis;
        r.body["socle"] = mono(p.socle);
        r.body["matrix"] = mat;
        r.body["nondegenerate"] = p.nondegenerate;
        return r;
    };

    auto mf_verb = [&](const std::string& name, const std::string& help) {
        verb(name, help, "MF descriptors")->add_option("--out", out, "write the factorization to this file");
    };
    mf_verb("ts", "Thom-Sebastiani tensor product");
    verbs["ts"] = [&](const RunConfig&, const Session& s) {
        auto m = s.mfs(pos, false);
        require_count(m.size(), 2, "ts");
        std::map<std::string, std::string> rename;
        std::vector<std::string> taken = m[1].ring()->names();
        for (const auto& v : m[1].ring()->names()) {
            if (m[0].ring()->index_of(v) < 0) continue;
            std::string fresh = fresh_variable(*m[0].ring(), v, taken);
            taken.push_back(fresh);
            rename[v] = fresh;
        }
        Result r;
        mf_output(r, ts_tensor(m[0], m[1], rename), out);
        return r;
    };
    mf_verb("dual", "dual factorization of -f");
    verbs["dual"] = [&](const RunConfig&, const Session& s) {
        auto m = s.mfs(pos, false);
        require_count(m.size(), 1, "dual");
        Result r;
        mf_output(r, dual(m[0]), out);
        return r;
    };
    mf_verb("knorrer", "Knorrer doubling f + uv");
    verbs["knorrer"] = [&](const RunConfig&, const Session& s) {
        auto m = s.mfs(pos, false);
        require_count(m.size(), 1, "knorrer");
        Result r;
        mf_output(r, knorrer_double(m[0]), out);
        return r;
    };

    auto form_verb = [&](const std::string& name, const std::string& help) {
        CLI::App* c = verb(name, help, "");
        c->add_option("--quadric", quadric, "homogeneous quadratic polynomial");
        c->add_option("--gram", gram, "Gram matrix as JSON rows, q(v) = Q(v,v)");
    };
    form_verb("clifford", "End of k over k[x]/(q) with its generator products");
    verbs["clifford"] = [&](const RunConfig& cfg, const Session& s) {
        std::vector<std::string> names;
        QuadraticForm q = read_form(quadric, gram, s, cfg.field, names);
        EndAlgebra e = mf_end_algebra(q, cfg.N_max, cfg.D_max);
        Result r;
        r.body = end_json(e, names);
        r.body["gram"] = gram_json(q);
        return r;
    };
    form_verb("clifford-compare", "compare End of k with the Clifford algebra");
    verbs["clifford-compare"] = [&](const RunConfig& cfg, const Session& s) {
        std::vector<std::string> names;
        QuadraticForm q = read_form(quadric, gram, s, cfg.field, names);
        CliffordComparison c = compare_clifford(q, cfg.N_max, cfg.D_max);
        Result r;
        r.body = end_json(c.end, names);
        r.body["gram"] = gram_json(q);
        r.body["equal"] = c.equal;
        r.body["dims_match"] = c.dims_match;
        r.body["relations_hold"] = c.relations_hold;
        return r;
    };

    verb("hyperbolic", "End of O_L for sum x_i y_i over k((beta))", "rank r");
    verbs["hyperbolic"] = [&](const RunConfig& cfg, const Session&) {
        if (pos.size() != 1) throw Error(ErrorCode::Precondition, "hyperbolic expects the rank r");
        std::int64_t rank = parse_int(pos[0], "rank");
        if (rank < 1) throw Error(ErrorCode::Precondition, "rank must be >= 1");
        HyperbolicResult h = hyperbolic_triviality(rank, cfg.N_max, cfg.D_max, cfg.field, cfg.window);
        Result r;
        r.body["even"] = h.tate.even;
        r.body["odd"] = h.tate.odd;
        r.body["trivial"] = h.trivial;
        r.body["stabilized"] = h.stabilized;
        r.body["D_used"] = h.D_used;
        json dims = json::array();
        for (const auto& d : h.dims) dims.push_back(dims_json(d));
        r.body["dims"] = dims;
        r.certificates["hyperbolic"] = {{"stabilized", h.stabilized}, {"D_used", h.D_used}};
        r.stabilized = h.stabilized;
        return r;
    };

    Outcome res;
    json prov;
    prov["command"] = args;
    auto fail = [&](const std::string& code, const std::string& msg) {
        res.doc = {{"error", {{"code", code}, {"message", msg}}}, {"provenance", prov}};
        res.exit_code = kExitError;
        res.text = res.doc.dump(2) + "\n";
        return res;
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        res.text = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        RunConfig cfg = make_config(o, env);
        prov["config"] = config_json(cfg);
        std::string name = app.get_subcommands().front()->get_name();
        Session session(cfg, split_list(o.vars));
        Result r = verbs.at(name)(cfg, session);
        prov["certificates"] = r.certificates;
        res.doc = r.body;
        res.doc["provenance"] = prov;
        res.exit_code = r.stabilized ? kExitOk : kExitUnstabilized;
        res.text = o.table ? render_table(res.doc) : res.doc.dump(2) + "\n";
        return res;
    } catch (const Error& e) {
        return fail(error_code_name(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
}

} // namespace mfkit::cli
