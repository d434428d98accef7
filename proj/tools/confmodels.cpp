#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "confmodels/catalog.hpp"
#include "confmodels/cohomology.hpp"
#include "confmodels/io.hpp"
#include "confmodels/structure_maps.hpp"
#include "confmodels/version.hpp"

namespace fs = std::filesystem;
using namespace confmodels;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kInputError = 2, kTooLarge = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& parts)
{
    std::string out;
    for (const auto& p : parts)
        out += (out.empty() ? "" : " ") + p;
    return out;
}

// "catalog:key params" or a path to an algebra JSON file.
PDAlgebraPtr load_algebra(const std::string& spec)
{
    try {
        if (spec.rfind("catalog:", 0) == 0)
            return catalog_get(spec.substr(8));
        return std::make_shared<const PDAlgebra>(validate_algebra(read_algebra_file(spec)));
    } catch (const ParseError& e) {
        throw InputError(std::string("parse error at ") + e.what());
    } catch (const ValidationError& e) {
        throw InputError(e.what());
    } catch (const CatalogError& e) {
        throw InputError(e.what());
    }
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}

std::string cache_key(const PDAlgebra& h, ModelKind kind, int n)
{
    return sha256_hex(canonical_algebra_json(h) + "\n" + to_string(kind) + "\n" + std::to_string(n) + "\n" + engine_version);
}

std::optional<std::string> read_cache(const fs::path& file)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    if (!json::accept(ss.str()))
        return std::nullopt;
    return ss.str();
}

void write_cache(const fs::path& dir, const fs::path& file, const std::string& text)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::random_device rd;
    fs::path tmp = dir / (file.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp);
        if (!out)
            return;
        out << text;
        if (!out)
            return;
    }
    fs::rename(tmp, file, ec);
    if (ec)
        fs::remove(tmp, ec);
}

bool size_guard(std::uint64_t predicted, std::uint64_t limit, bool force)
{
    if (force || predicted <= limit)
        return true;
    std::cerr << "estimated basis size " << predicted << " exceeds the limit " << limit << " (use --force to override)\n";
    return false;
}

BettiTable table_from_json(const json& j)
{
    BettiTable b;
    for (const auto& e : j.at("betti"))
        b.entries[{e.at("p").get<int>(), e.at("q").get<int>()}] = e.at("dim").get<long>();
    return b;
}

void render_betti(const std::string& text, const std::string& format)
{
    json j = json::parse(text);
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (format == "latex") {
        std::cout << "P(s,t) = " << table_from_json(j).poincare().to_latex() << "\n";
        return;
    }
    std::cout << "model: " << j["model"].get<std::string>() << "\n"
              << "algebra: " << j["algebra"].get<std::string>() << "\n"
              << "n: " << j["n"].get<int>() << "\n"
              << "dim H^{p,q}:\n";
    for (const auto& e : j["betti"])
        std::cout << "  p=" << e["p"].get<int>() << " q=" << e["q"].get<int>() << ": " << e["dim"].get<long>() << "\n";
    std::cout << "P(s,t) = " << j["poincare_st"].get<std::string>() << "\n"
              << "P(s,t) by s = " << j["poincare_st_by_s"].get<std::string>() << "\n"
              << "P(t) = " << j["poincare_t"].get<std::string>() << "\n";
}

int cmd_validate(const std::string& path, const std::string& format)
{
    RawAlgebra raw;
    try {
        raw = read_algebra_file(path);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return kInputError;
    }
    std::vector<Violation> violations;
    std::optional<PDAlgebra> h;
    try {
        h = validate_algebra(raw);
    } catch (const ValidationError& e) {
        violations = e.violations();
    }
    if (format == "json") {
        json j;
        j["algebra"] = raw.name;
        j["valid"] = violations.empty();
        j["violations"] = json::array();
        for (const auto& v : violations)
            j["violations"].push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "algebra: " << raw.name << "\n";
        if (h) {
            std::cout << "formal dimension: " << h->formal_dimension() << "\n"
                      << "basis: " << h->dim() << " elements, Euler characteristic " << euler_characteristic(*h) << "\n"
                      << "valid\n";
        } else {
            std::cout << "invalid:\n";
            for (const auto& v : violations)
                std::cout << "  " << v.to_string() << "\n";
        }
    }
    return violations.empty() ? kPass : kCheckFailed;
}

struct BettiOptions {
    std::string model;
    std::vector<std::string> algebra;
    int n = 0;
    std::string format = "text";
    std::string cache_dir;
    bool force = false;
    std::uint64_t max_basis = 2000000;
};

int cmd_betti(const BettiOptions& o)
{
    auto kind = parse_model_kind(o.model);
    if (!kind || *kind == ModelKind::Generic) {
        std::cerr << "unknown model kind '" << o.model << "' (expected kriz, j or punctured)\n";
        return kInputError;
    }
    if (o.n < 0) {
        std::cerr << "n must be non-negative\n";
        return kInputError;
    }
    PDAlgebraPtr h = load_algebra(join(o.algebra));
    if (!size_guard(predicted_dimension(*kind, h->dim(), o.n), o.max_basis, o.force))
        return kTooLarge;

    fs::path dir = o.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("CONFIG_MODELS_CACHE"))
            dir = env;
    fs::path file;
    if (!dir.empty()) {
        file = dir / (cache_key(*h, *kind, o.n) + ".json");
        if (auto hit = read_cache(file)) {
            render_betti(*hit, o.format);
            return kPass;
        }
    }
    ModelPtr m = build_model(*kind, h, o.n);
    std::string text = betti_json(betti(*m), to_string(*kind), h->name(), o.n);
    if (!dir.empty())
        write_cache(dir, file, text);
    render_betti(text, o.format);
    return kPass;
}

struct VerifyOptions {
    std::string suite;
    std::vector<std::string> algebra{"catalog:cp(2)"};
    std::vector<std::string> second;
    int n = -1;
    int n_max = 3;
    bool closed = false;
    std::string format = "text";
    bool force = false;
    std::uint64_t max_basis = 2000000;
};

void psi_checks(SuiteReport& rep, const std::shared_ptr<const ModelContext>& ctx, int lo, int hi)
{
    for (int n = lo; n <= hi; ++n) {
        const std::string inst = "Psi " + ctx->algebra().name() + " n=" + std::to_string(n);
        try {
            ChainMap f = psi(ctx, n);
            rep.add("chain-map", inst, true);
            InducedMap im = induced_map(f);
            std::string witness;
            if (!im.iso())
                witness = "bidegree (" + std::to_string(im.non_iso.front().first) + "," + std::to_string(im.non_iso.front().second) + ")";
            rep.add("cohomology-iso", inst, im.iso(), witness);
        } catch (const ChainMapViolation& e) {
            rep.add("chain-map", inst, false, e.what());
        }
    }
}

void reduction_checks(SuiteReport& rep, const std::shared_ptr<const ModelContext>& ctx, int lo, int hi)
{
    for (int n = std::max(lo, 2); n <= hi; ++n) {
        ReductionReport r = reduce_over_H(ctx, n);
        const std::string inst = "K(x)_H J_" + std::to_string(n) + "(" + ctx->algebra().name() + ") vs E_" + std::to_string(n - 1) + "°";
        const std::string first = r.findings.empty() ? "" : r.findings.front();
        rep.add("ideal-complement", inst, r.pivots_ok, r.pivots_ok ? "" : first);
        rep.add("bijection", inst, r.bijection, r.bijection ? "" : first);
        rep.add("bidegree", inst, r.bidegree, r.bidegree ? "" : first);
        rep.add("chain-map", inst, r.chain, r.chain ? "" : first);
        rep.add("multiplicative", inst, r.multiplicative, r.multiplicative ? "" : first);
    }
}

void column_checks(SuiteReport& rep, const std::shared_ptr<const ModelContext>& ctx, int lo, int hi)
{
    for (int n = std::max(lo, 1); n <= hi; ++n) {
        ColumnReport c = column_acyclicity(ctx, n);
        const std::string inst = "E_" + std::to_string(n) + "(" + ctx->algebra().name() + ")";
        rep.add("column-splitting", inst, c.splitting);
        std::string w;
        if (!c.positive_q_cohomology.empty()) {
            const auto& [p, q, deg] = c.positive_q_cohomology.front();
            w = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " degree " + std::to_string(deg);
        }
        rep.add("column-acyclic", inst, w.empty(), w);
        std::string h0;
        for (const auto& [pd, v] : c.h0)
            if (v.first != v.second && h0.empty())
                h0 = "p=" + std::to_string(pd.first) + " degree " + std::to_string(pd.second) + ": " + std::to_string(v.first) + " != " + std::to_string(v.second);
        rep.add("column-h0", inst, h0.empty(), h0);
    }
}

int cmd_verify(const VerifyOptions& o)
{
    static const std::vector<std::string> suites{"psi", "prop6", "simplicial", "coaction", "connected-sum", "lemma13", "sigma", "all"};
    if (std::find(suites.begin(), suites.end(), o.suite) == suites.end()) {
        std::cerr << "unknown suite '" << o.suite << "'\n";
        return kInputError;
    }
    const int hi = o.n >= 0 ? o.n : o.n_max;
    const int lo = o.n >= 0 ? o.n : 2;
    if (hi < 1) {
        std::cerr << "n must be at least 1\n";
        return kInputError;
    }
    PDAlgebraPtr h = load_algebra(join(o.algebra));
    PDAlgebraPtr k = o.second.empty() ? h : load_algebra(join(o.second));
    const bool with_sum = o.suite == "connected-sum" || o.suite == "all";
    const int largest = with_sum ? std::max(h->dim(), h->dim() + k->dim() - 2) : h->dim();
    if (!size_guard(predicted_dimension(ModelKind::Kriz, largest, hi), o.max_basis, o.force))
        return kTooLarge;

    auto ctx = ModelContext::make(h);
    SuiteReport rep;
    auto want = [&](const char* s) { return o.suite == s || o.suite == "all"; };
    if (want("psi"))
        psi_checks(rep, ctx, lo, hi);
    if (want("prop6"))
        reduction_checks(rep, ctx, lo, hi);
    if (want("lemma13"))
        column_checks(rep, ctx, lo, hi);
    if (want("simplicial")) {
        if (o.closed || o.suite == "all")
            rep.merge(closed_face_controls(ctx, hi));
        if (!o.closed)
            rep.merge(simplicial_suite(ctx, hi));
    }
    if (want("coaction"))
        rep.merge(coaction_suite(ctx, hi));
    if (want("sigma"))
        rep.merge(sigma_suite(ctx, hi));
    if (want("connected-sum")) {
        if (h->formal_dimension() != k->formal_dimension()) {
            std::cerr << "connected sum needs equal formal dimensions\n";
            return kInputError;
        }
        rep.merge(connected_sum_suite(ctx, o.second.empty() ? ctx : ModelContext::make(k), hi));
    }

    std::size_t expected = 0;
    for (const auto& r : rep.results)
        expected += r.status == "expected-failure";
    if (o.format == "json") {
        std::cout << rep.to_json() << "\n";
    } else {
        for (const auto& r : rep.results) {
            const std::string tag = r.status == "pass" ? "PASS " : r.status == "fail" ? "FAIL " : "XFAIL";
            std::cout << tag << " " << r.check << ": " << r.instance;
            if (!r.witness.empty())
                std::cout << "  [witness " << r.witness << "]";
            std::cout << "\n";
        }
        std::cout << rep.results.size() << " checks, " << rep.failures() << " failed, " << expected << " expected failures\n";
    }
    return rep.ok() ? kPass : kCheckFailed;
}

int cmd_catalog(const std::string& format)
{
    if (format == "json") {
        json j = json::array();
        for (const auto& e : catalog_entries())
            j.push_back({{"key", e.key}, {"params", e.params}, {"example", e.example}, {"notes", e.notes}});
        std::cout << j.dump(2) << "\n";
        return kPass;
    }
    for (const auto& e : catalog_entries())
        std::cout << std::left << std::setw(10) << e.key << std::setw(14) << e.params << std::setw(30) << e.example << e.notes << "\n";
    return kPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rational models of configuration spaces of points on even-dimensional manifolds"};
    app.require_subcommand(1);

    std::string validate_path, validate_format = "text";
    auto* validate = app.add_subcommand("validate", "check an algebra JSON file for Poincare duality");
    validate->add_option("file", validate_path, "algebra JSON")->required();
    validate->add_option("--format", validate_format)->check(CLI::IsMember({"text", "json"}));

    BettiOptions bo;
    auto* betti_cmd = app.add_subcommand("betti", "bigraded Betti numbers of a model");
    betti_cmd->add_option("--model", bo.model, "kriz, j or punctured")->required();
    betti_cmd->add_option("--algebra", bo.algebra, "file path or catalog:key[params]")->required()->expected(1, 4);
    betti_cmd->add_option("-n", bo.n, "number of points")->required();
    betti_cmd->add_option("--format", bo.format)->check(CLI::IsMember({"text", "json", "latex"}));
    betti_cmd->add_option("--cache-dir", bo.cache_dir, "result cache (default $CONFIG_MODELS_CACHE)");
    betti_cmd->add_flag("--force", bo.force, "ignore the size guard");
    betti_cmd->add_option("--max-basis", bo.max_basis, "size guard on the predicted basis count");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", vo.suite, "psi, prop6, simplicial, coaction, connected-sum, lemma13, sigma or all")->required();
    verify->add_option("--algebra", vo.algebra, "file path or catalog:key[params]")->expected(1, 4);
    verify->add_option("--second-algebra", vo.second, "second summand for connected-sum (default: the first)")->expected(1, 4);
    verify->add_option("-n", vo.n, "single number of points");
    verify->add_option("--n-max", vo.n_max, "largest number of points");
    verify->add_flag("--closed", vo.closed, "negative controls on the closed model");
    verify->add_option("--format", vo.format)->check(CLI::IsMember({"text", "json"}));
    verify->add_flag("--force", vo.force, "ignore the size guard");
    verify->add_option("--max-basis", vo.max_basis, "size guard on the predicted basis count");

    std::string catalog_format = "text";
    auto* catalog = app.add_subcommand("catalog", "built-in algebras");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "list catalog entries");
    list->add_option("--format", catalog_format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kInputError;
    }

    try {
        if (*validate)
            return cmd_validate(validate_path, validate_format);
        if (*betti_cmd)
            return cmd_betti(bo);
        if (*verify)
            return cmd_verify(vo);
        if (*list)
            return cmd_catalog(catalog_format);
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const StructureMapError& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
