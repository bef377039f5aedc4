#include "ofdef/certify.hpp"
#include "ofdef/config.hpp"
#include "ofdef/error.hpp"
#include "ofdef/lemmas.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ofdef;

namespace {

int emit(const Json& j, bool ok)
{
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

int emit_error(const std::string& kind, const std::string& message)
{
    std::cout << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << "\n";
    return 2;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

Json aggregate(const std::vector<LemmaReport>& reps, std::string& verdict)
{
    Json arr = Json::array();
    verdict = "pass";
    for (const auto& r : reps) {
        arr.push_back(r.to_json());
        if (r.verdict() == Verdict::Fail)
            verdict = "fail";
        else if (r.verdict() == Verdict::Inconclusive && verdict == "pass")
            verdict = "inconclusive";
    }
    return arr;
}

void write_or_print(const Json& j, const std::string& out)
{
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw Error(ErrorKind::Parse, out + ": cannot write file");
    f << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact arithmetic and certificates for a diophantine definition of O_F in O_K"};
    app.require_subcommand(1);
    std::string config;
    app.add_option("--config", config, "instance config (JSON)");

    auto* validate = app.add_subcommand("validate", "check the instance invariants");

    auto* lemmas = app.add_subcommand("lemmas", "run lemma suites");
    std::string only;
    lemmas->add_option("--only", only, "comma-separated tags: bound,descent,growth,multiple,point,quotient,gi");

    auto* certify = app.add_subcommand("certify-square", "build a certificate that m^2 lies in S");
    long m = 0;
    std::string out;
    certify->add_option("--m", m, "positive integer")->required();
    certify->add_option("--out", out, "write the certificate here instead of stdout");

    auto* verify = app.add_subcommand("verify", "replay a certificate");
    std::string cert_path;
    verify->add_option("--cert", cert_path, "certificate file")->required();

    auto* descent = app.add_subcommand("descent", "run the soundness descent on a certificate");
    descent->add_option("--cert", cert_path, "certificate file")->required();

    auto* element = app.add_subcommand("certify-element", "certify membership of an element of O_F");
    std::string coords;
    bool no_leaves = false;
    element->add_option("--element", coords, "comma-separated power-basis coordinates in F")->required();
    element->add_flag("--no-leaves", no_leaves, "omit the point certificates for leaf squares");
    element->add_option("--out", out, "write the certificate here instead of stdout");

    auto* squares = app.add_subcommand("four-squares", "write a as a sum of four squares");
    std::string a_text;
    squares->add_option("--a", a_text, "integer")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error("usage", e.what());
    }

    try {
        if (squares->parsed()) {
            const Rat a = parse_rational(a_text);
            if (a.get_den() != 1)
                throw Error(ErrorKind::Parse, "--a: expected an integer");
            Json j = {{"a", to_string(a.get_num())}};
            try {
                Json w = Json::array();
                for (const auto& x : four_squares_witness(a.get_num()))
                    w.push_back(to_string(x));
                j["witness"] = w;
                j["verdict"] = "witness";
                return emit(j, true);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NoWitness)
                    throw;
                j["verdict"] = "no-witness";
                j["reason"] = e.what();
                return emit(j, false);
            }
        }

        if (config.empty())
            throw Error(ErrorKind::Parse, "--config is required for this subcommand");

        if (validate->parsed()) {
            const RankOneInstance inst = read_instance(config);
            const ValidationReport rep = validate_instance(inst);
            return emit(to_json(rep), rep.passed());
        }

        const RankOneInstance inst = load_instance(config);

        if (lemmas->parsed()) {
            const auto tags = only.empty() ? lemma_tags() : split(only, ',');
            std::string verdict;
            Json reps = aggregate(run_lemma_suites(inst, tags), verdict);
            return emit({{"instance", inst.name}, {"reports", reps}, {"verdict", verdict}}, verdict == "pass");
        }
        if (certify->parsed()) {
            write_or_print(build_S_certificate(inst, m, inst.bounds.k_bound).to_json(), out);
            return 0;
        }
        if (verify->parsed() || descent->parsed()) {
            const Json j = read_json_file(cert_path);
            const std::string schema = j.value("schema", "");
            if (schema == OFCertificate::kSchema) {
                if (descent->parsed())
                    throw Error(ErrorKind::Parse, "descent runs on S certificates; verify an O_F certificate instead");
                const CheckReport rep = verify_of_certificate(OFCertificate::from_json(inst, j), inst);
                return emit(rep.to_json("accept", "reject"), rep.passed());
            }
            const SCertificate cert = SCertificate::from_json(inst, j);
            const CheckReport rep =
                verify->parsed() ? verify_S_certificate(cert, inst) : soundness_descent(cert, inst);
            return emit(verify->parsed() ? rep.to_json("accept", "reject") : rep.to_json("pass", "fail"), rep.passed());
        }
        if (element->parsed()) {
            const FieldPtr& F = inst.base();
            std::vector<Rat> c;
            for (const auto& s : split(coords, ','))
                c.push_back(parse_rational(s));
            if (c.size() != F->degree())
                throw Error(ErrorKind::Parse, "--element: expected " + std::to_string(F->degree()) + " coordinates");
            const FieldElement w(F, c);
            write_or_print(certify_of_element(inst, w, !no_leaves, inst.bounds.k_bound).to_json(), out);
            return 0;
        }
    } catch (const Error& e) {
        return emit_error(to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
        return emit_error("internal", e.what());
    }
    return emit_error("usage", "no subcommand");
}
