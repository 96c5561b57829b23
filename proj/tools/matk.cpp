// matk: command-line front end for moment-angle complex cohomology and
// Massey product computations.  Every invocation prints one JSON object on
// stdout (or writes it to --out); diagnostics go to stderr.
//
// Exit codes: 0 success, 1 domain error (reported as {"error": {...}}),
// 2 usage error.

#include "matk/error.hpp"
#include "matk/io.hpp"
#include "matk/parallel.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace matk;

namespace {

struct Globals
{
    std::string ring = "Z";
    std::string out;
    unsigned threads = 0;
};

std::vector<std::string> split_labels(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

ComplexPtr load_complex(const std::string& path) { return make_complex(complex_from_json(read_json_file(path))); }

std::vector<CohomologyClass> load_classes(const ComplexPtr& k, const std::string& path, const Ring& ring)
{
    std::vector<CohomologyClass> out;
    for (auto& c : cochains_from_json(k, read_json_file(path), ring))
        out.emplace_back(std::move(c));
    return out;
}

void emit(const Globals& g, const Json& j)
{
    if (g.out.empty())
        std::cout << dump_stable(j);
    else
        write_json_file(g.out, j);
}

Json reduced_homology_json(const SimplicialComplex& k, const Ring& ring)
{
    Json rows = Json::array();
    const auto groups = reduced_homology(k, ring);
    for (std::size_t i = 0; i < groups.size(); ++i)
    {
        Json row = group_to_json(groups[i]);
        row["dim"] = static_cast<int>(i) - 1;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"matk: cohomology of moment-angle complexes and Massey products"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--ring", g.ring, "Coefficient ring: Z, Q, F2, F3, F5, Fp:<p>")->capture_default_str();
    app.add_option("--out", g.out, "Write the JSON report to this file instead of stdout");
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();

    // The selected action runs after parsing so that global flags are known.
    std::function<Json()> action;

    // build
    std::string input;
    auto* build = app.add_subcommand("build", "Validate and canonicalise a complex");
    build->add_option("complex", input, "Complex JSON file")->required();
    build->callback([&] {
        action = [&] {
            auto k = load_complex(input);
            Json out = complex_to_json(*k);
            out["dimension"] = k->dimension();
            out["f_vector"] = k->f_vector();
            out["euler_characteristic"] = euler_characteristic(*k);
            return out;
        };
    });

    // subcomplex
    std::string J_text;
    auto* sub = app.add_subcommand("subcomplex", "Full subcomplex on a vertex subset");
    sub->add_option("complex", input, "Complex JSON file")->required();
    sub->add_option("--J", J_text, "Comma-separated vertex labels")->required();
    sub->callback([&] {
        action = [&] {
            auto k = load_complex(input);
            return complex_to_json(full_subcomplex(*k, split_labels(J_text)));
        };
    });

    // homology
    auto* hom = app.add_subcommand("homology", "Reduced simplicial homology");
    hom->add_option("complex", input, "Complex JSON file")->required();
    hom->callback([&] {
        action = [&] {
            const Ring ring = Ring::parse(g.ring);
            auto k = load_complex(input);
            return Json{{"ring", ring.name()}, {"reduced_homology", reduced_homology_json(*k, ring)}};
        };
    });

    // hochster
    auto* hoch = app.add_subcommand("hochster", "Cohomology of Z_K by the Hochster decomposition");
    hoch->add_option("complex", input, "Complex JSON file")->required();
    hoch->callback([&] {
        action = [&] {
            const Ring ring = Ring::parse(g.ring);
            auto k = load_complex(input);
            return hochster_to_json(*k, hochster_decompose(*k, ring));
        };
    });

    // zk-oracle
    auto* oracle = app.add_subcommand("zk-oracle", "Cohomology of Z_K from its cellular cochain complex");
    oracle->add_option("complex", input, "Complex JSON file")->required();
    oracle->callback([&] {
        action = [&] {
            const Ring ring = Ring::parse(g.ring);
            auto k = load_complex(input);
            return graded_groups_to_json(ring, moment_angle_cw_oracle(*k, ring));
        };
    });

    // product
    std::string classes_path;
    auto* prod = app.add_subcommand("product", "Product of two classes in H*(Z_K)");
    prod->add_option("complex", input, "Complex JSON file")->required();
    prod->add_option("--classes", classes_path, "JSON file with two cochains")->required();
    prod->callback([&] {
        action = [&] {
            const Ring ring = Ring::parse(g.ring);
            auto k = load_complex(input);
            auto cls = load_classes(k, classes_path, ring);
            if (cls.size() != 2)
                throw Error("InvalidArity", "product needs exactly two classes");
            const CohomologyClass p = product_in_hochster(cls[0], cls[1]);
            return Json{{"product", cochain_to_json(p.representative())},
                        {"total_degree", p.total_degree()},
                        {"is_zero", p.is_zero()}};
        };
    });

    // massey
    std::size_t budget = kDefaultBudget;
    int order = 0;
    std::string method = "auto";
    auto* massey = app.add_subcommand("massey", "Decide a Massey product <a1, ..., an>");
    massey->add_option("complex", input, "Complex JSON file")->required();
    massey->add_option("--classes", classes_path, "JSON file with the class representatives")->required();
    massey->add_option("--order", order, "Expected number n of classes (0 = any)");
    massey->add_option("--budget", budget, "Maximum number of defining systems to enumerate")->capture_default_str();
    massey->add_option("--method", method, "auto, triple or enumerate")
        ->check(CLI::IsMember({"auto", "triple", "enumerate"}))
        ->capture_default_str();
    massey->callback([&] {
        action = [&] {
            const Ring ring = Ring::parse(g.ring);
            auto k = load_complex(input);
            auto cls = load_classes(k, classes_path, ring);
            if (order != 0 && static_cast<int>(cls.size()) != order)
                throw Error("InvalidArity", "expected " + std::to_string(order) + " classes, got " +
                                                std::to_string(cls.size()));
            MasseyVerdict v;
            if (method == "triple")
            {
                if (cls.size() != 3)
                    throw Error("InvalidArity", "the triple decision needs three classes");
                v = triple_massey_decide(cls[0], cls[1], cls[2]);
            }
            else if (method == "enumerate")
                v = enumerate_defining_systems(cls, budget);
            else
                v = decide_massey(cls, budget);
            Json out = verdict_to_json(v);
            out["ring"] = ring.name();
            out["n"] = cls.size();
            return out;
        };
    });

    // construct-join
    bool certify = false;
    auto* cj = app.add_subcommand("construct-join", "Join factors and star-delete to realise a Massey product");
    cj->add_option("spec", input, "JoinMasseySpec JSON file")->required();
    cj->add_option("--budget", budget, "Enumeration budget for the certificate")->capture_default_str();
    cj->add_flag("--certify", certify, "Also decide the product and build the witness cycle");
    cj->callback([&] {
        action = [&] {
            const Ring ring = Ring::parse(g.ring);
            const auto base = std::filesystem::path(input).parent_path();
            const JoinConstruction c = construct_massey_complex(join_spec_from_json(read_json_file(input), base, ring));
            Json out = {{"complex", complex_to_json(*c.complex)},
                        {"deletions", deletion_ledger_to_json(c)},
                        {"canonical_system", defining_system_to_json(canonical_defining_system_joins(c))}};
            if (certify)
            {
                const JoinCertificate cert = certify_join(c, budget);
                out["violations"] = cert.violations.size();
                out["omega"] = cochain_to_json(cert.omega);
                if (cert.witness)
                    out["witness_cycle"] = chain_to_json(*cert.witness);
                out["witness_closed"] = cert.witness_closed;
                out["pairing"] = scalar_to_json(cert.pairing);
                out["verdict"] = verdict_to_json(cert.verdict);
            }
            return out;
        };
    });

    // contract
    std::string edge_text, new_label;
    bool require_link = false;
    auto* con = app.add_subcommand("contract", "Contract an edge");
    con->add_option("complex", input, "Complex JSON file")->required();
    con->add_option("--edge", edge_text, "Edge as u,w (labels)")->required();
    con->add_option("--label", new_label, "Label of the merged vertex (default: u)");
    con->add_flag("--require-link-condition", require_link, "Fail when the link condition does not hold");
    con->callback([&] {
        action = [&] {
            auto k = load_complex(input);
            const auto e = split_labels(edge_text);
            if (e.size() != 2)
                throw Error("InvalidEdge", "--edge expects two labels u,w");
            const Contraction c = contract_edge(k, k->rank_of(e[0]), k->rank_of(e[1]), new_label);
            if (require_link && !c.link_condition)
                throw Error("LinkConditionFails", "link condition fails for {" + e[0] + "," + e[1] + "}");
            return Json{{"complex", complex_to_json(*c.complex)},
                        {"link_condition", c.link_condition},
                        {"map", vertex_map_to_json(c.map)["image"]}};
        };
    });

    // stretch
    std::string system_path;
    auto* st = app.add_subcommand("stretch", "Check a vertex map is a composite of link-condition contractions");
    st->add_option("map", input, "JSON file {source, target, image}")->required();
    st->add_option("--system", system_path, "Upstairs defining system to pull back and certify");
    st->add_option("--budget", budget, "Enumeration budget for the certificate")->capture_default_str();
    st->callback([&] {
        action = [&] {
            const Ring ring = Ring::parse(g.ring);
            const Json j = read_json_file(input);
            auto source = make_complex(complex_from_json(j.at("source")));
            auto target = make_complex(complex_from_json(j.at("target")));
            const VertexMap phi = vertex_map_from_json(source, target, j.at("image"));
            const auto steps = factor_into_contractions(phi);
            Json out = {{"is_stretch", steps.has_value()}};
            if (steps)
            {
                Json s = Json::array();
                for (const auto& [u, w] : *steps)
                    s.push_back({u, w});
                out["contractions"] = s;
            }
            if (!system_path.empty())
            {
                const DefiningSystem up = defining_system_from_json(target, read_json_file(system_path), ring);
                const ContractionCertificate cert = certify_contraction(phi, up, budget);
                out["pullback_system"] = defining_system_to_json(cert.system);
                out["violations"] = cert.violations.size();
                out["verdict"] = verdict_to_json(cert.verdict);
            }
            return out;
        };
    });

    // nestohedron
    std::string kind;
    int dim = 0;
    std::vector<std::string> pair_texts;
    auto* nest = app.add_subcommand("nestohedron", "Nested set complex of a standard polytope");
    nest->add_option("--kind", kind, "permutahedron, stellohedron or cube-truncation")
        ->required()
        ->check(CLI::IsMember({"permutahedron", "stellohedron", "cube-truncation"}));
    nest->add_option("--dim", dim, "Dimension n")->required();
    nest->add_option("--pair", pair_texts, "Truncation pair i,k (repeatable; cube-truncation only)");
    nest->callback([&] {
        action = [&] {
            if (kind == "permutahedron")
                return complex_to_json(permutahedron(dim));
            if (kind == "stellohedron")
                return complex_to_json(stellohedron(dim));
            std::vector<std::pair<int, int>> pairs;
            for (const auto& t : pair_texts)
            {
                const auto parts = split_labels(t);
                if (parts.size() != 2)
                    throw Error("InvalidTruncationPair", t);
                pairs.emplace_back(std::stoi(parts[0]), std::stoi(parts[1]));
            }
            return complex_to_json(cube_truncation(dim, pairs));
        };
    });

    // nested-set
    auto* ns = app.add_subcommand("nested-set", "Nested set complex of a building set");
    ns->add_option("building_set", input, "BuildingSet JSON file")->required();
    ns->callback([&] {
        action = [&] { return complex_to_json(nested_set_complex(building_set_from_json(read_json_file(input)))); };
    });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        set_num_threads(g.threads);
        emit(g, action());
        return 0;
    }
    catch (const Error& e)
    {
        std::cout << dump_stable({{"error", {{"code", e.code()}, {"message", e.detail()}}}});
        std::cerr << "matk: " << e.what() << "\n";
        return 1;
    }
    catch (const Json::exception& e)
    {
        std::cout << dump_stable({{"error", {{"code", "InvalidJson"}, {"message", e.what()}}}});
        std::cerr << "matk: " << e.what() << "\n";
        return 1;
    }
    catch (const std::invalid_argument& e)
    {
        std::cout << dump_stable({{"error", {{"code", "InvalidInput"}, {"message", e.what()}}}});
        std::cerr << "matk: " << e.what() << "\n";
        return 1;
    }
}
