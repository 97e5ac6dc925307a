// goodred: good-reduction models of rational maps over k((t)).
//
// Exit codes: 0 = verified, 1 = property violated, 2 = inconclusive
// (precision or not found), 3 = usage error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "goodred/families.hpp"
#include "goodred/parse.hpp"
#include "json.hpp"

using namespace goodred;
using nlohmann::json;

namespace {

json level_json(const Level& lv) {
    return json{{"e", lv.e}, {"f", lv.f}, {"degree", lv.degree()}};
}

json mobius_json(const MobiusMap& h) {
    return json{{"a", h.a().str()}, {"b", h.b().str()}, {"c", h.c().str()}, {"d", h.d().str()}};
}

json map_json(const RationalMap& phi) {
    return json{{"num", phi.num().str()}, {"den", phi.den().str()},
                {"degree", phi.degree()}, {"level", level_json(phi.level())}};
}

json point_json(const TypeIIPoint& xi) {
    return json{{"center", xi.center().str()}, {"radius_val", xi.radius_val().str()}};
}

int run_bound(long long p, long long d) {
    std::cout << degree_bound(p, d) << "\n";
    return 0;
}

int run_check(const std::string& field, const std::string& map) {
    RationalMap phi = parse_map(map, field);
    ReducedMap rm = reduce(phi);
    bool good = has_good_reduction(phi);
    std::cout << "map: " << phi.str() << "\n";
    std::cout << "degree: " << phi.degree() << "\n";
    std::cout << "reduction: " << rm.str() << " (degree " << rm.degree << ")\n";
    std::cout << (good ? "good reduction\n" : "bad reduction\n");
    return good ? 0 : 1;
}

int run_conjugate(const std::string& field, const std::string& map, const std::string& mobius) {
    const FieldConfig* cfg = parse_field(field);
    RationalMap phi = parse_map(map, cfg);
    // parse "a,b,c,d"
    std::vector<PuiseuxElement> entries;
    size_t start = 0;
    for (int i = 0; i < 4; ++i) {
        size_t comma = mobius.find(',', start);
        std::string part = comma == std::string::npos ? mobius.substr(start)
                                                      : mobius.substr(start, comma - start);
        entries.push_back(parse_element(part, cfg));
        if (comma == std::string::npos) {
            if (i != 3) throw SyntaxError("mobius needs four comma-separated entries", start);
            break;
        }
        start = comma + 1;
    }
    MobiusMap h(entries[0], entries[1], entries[2], entries[3]);
    RationalMap psi = conjugate(phi.promote(join(phi.level(), h.level())), h);
    std::cout << psi.str() << "\n";
    return 0;
}

int run_invariant_point(const std::string& field, const std::string& map) {
    RationalMap phi = parse_map(map, field);
    if (phi.degree() < 2) {
        std::cerr << "the map must have degree >= 2\n";
        return 3;
    }
    auto xi = find_invariant_point(phi);
    if (!xi) {
        std::cout << "not found (inconclusive)\n";
        return 2;
    }
    std::cout << xi->str() << "\n";
    return 0;
}

int run_find_model(const std::string& field, const std::string& map, bool as_json) {
    RationalMap phi = parse_map(map, field);
    if (phi.degree() < 2) {
        std::cerr << "the map must have degree >= 2\n";
        return 3;
    }
    auto mr = find_good_model(phi);
    if (!mr) {
        if (as_json)
            std::cout << json{{"schema", "goodred/1"}, {"found", false}}.dump(2) << "\n";
        else
            std::cout << "no model found (inconclusive)\n";
        return 2;
    }
    if (as_json) {
        json steps = json::array();
        for (auto& s : mr->trace) steps.push_back({{"case", s.label}, {"note", s.note}});
        json out{{"schema", "goodred/1"},
                 {"found", true},
                 {"bound", mr->bound},
                 {"extension_degree", mr->extension_degree},
                 {"base_level", level_json(mr->base_level)},
                 {"model_level", level_json(mr->model_level)},
                 {"mobius", mobius_json(mr->h)},
                 {"model", map_json(mr->psi)},
                 {"invariant_point", point_json(mr->invariant_point)},
                 {"trace", steps}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "invariant point: " << mr->invariant_point.str() << "\n";
        std::cout << "extension degree: " << mr->extension_degree
                  << " (bound " << mr->bound << ")\n";
        std::cout << "mobius: " << mr->h.str() << "\n";
        std::cout << "model: " << mr->psi.str() << "\n";
        std::cout << "trace:";
        for (auto& s : mr->trace) std::cout << " [case " << s.label << ": " << s.note << "]";
        std::cout << "\n";
    }
    return 0;
}

int run_sharpness(int family, long long p, long long d, bool as_json) {
    SharpnessReport rep = verify_sharpness(family, p, d);
    if (as_json) {
        json audit = json::array();
        for (auto& a : rep.audit)
            audit.push_back({{"j", a.j},
                             {"exponent", a.exponent.str()},
                             {"binomial_vanishes", a.binomial_vanishes},
                             {"bound_holds", a.bound_holds}});
        json fails = json::array();
        for (auto& f : rep.failures) fails.push_back(f);
        json out{{"schema", "goodred/1"},
                 {"family", rep.family},
                 {"p", rep.p},
                 {"d", rep.d},
                 {"q", rep.q},
                 {"m", rep.m},
                 {"B", rep.B},
                 {"bad_reduction_over_base", rep.bad_reduction_over_base},
                 {"conjugate_good_reduction", rep.conjugate_good_reduction},
                 {"model_degree", rep.model_degree},
                 {"model_level", level_json(rep.model_level)},
                 {"mobius", mobius_json(rep.h)},
                 {"model", map_json(rep.psi)},
                 {"invariant_point", point_json(rep.invariant_point)},
                 {"invariant_verified", rep.invariant_verified},
                 {"finder_agrees", rep.finder_agrees},
                 {"lower_bound", rep.lower_bound},
                 {"totally_ramified", rep.totally_ramified},
                 {"audit", audit},
                 {"failures", fails},
                 {"sharp", rep.sharp}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "family " << rep.family << " over F" << rep.p << "((t)), d = " << rep.d
                  << ": B = " << rep.B << "\n";
        std::cout << "bad reduction over base: " << (rep.bad_reduction_over_base ? "yes" : "no")
                  << "\n";
        std::cout << "model: " << rep.psi.str() << " at level degree " << rep.model_degree
                  << "\n";
        std::cout << "invariant point: " << rep.invariant_point.str() << "\n";
        std::cout << "lower bound: " << rep.lower_bound << "\n";
        for (auto& f : rep.failures) std::cout << "failure: " << f << "\n";
        std::cout << (rep.sharp ? "sharp\n" : "not sharp\n");
    }
    return rep.sharp ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"good-reduction models of rational maps over k((t))"};
    app.require_subcommand(1);

    long long p = 0, d = 2;
    std::string field, map, mobius;
    bool as_json = false;
    int family = 3;

    auto* bound = app.add_subcommand("bound", "print the degree bound B(p, d)");
    bound->add_option("--p", p, "residue characteristic (0 or prime)")->required();
    bound->add_option("--d", d, "map degree")->required();

    auto* check = app.add_subcommand("check", "test a map for good reduction");
    check->add_option("--field", field, "base field, e.g. F5((t))")->required();
    check->add_option("--map", map, "rational map in z")->required();

    auto* conj = app.add_subcommand("conjugate", "conjugate a map by a Moebius map");
    conj->add_option("--field", field)->required();
    conj->add_option("--map", map)->required();
    conj->add_option("--mobius", mobius, "entries a,b,c,d of (az+b)/(cz+d)")->required();

    auto* invp = app.add_subcommand("invariant-point", "find the totally invariant type-II point");
    invp->add_option("--field", field)->required();
    invp->add_option("--map", map)->required();

    auto* findm = app.add_subcommand("find-model", "search for a good-reduction model");
    findm->add_option("--field", field)->required();
    findm->add_option("--map", map)->required();
    findm->add_flag("--json", as_json);

    auto* sharp = app.add_subcommand("sharpness", "verify a sharp family member");
    sharp->add_option("--case", family, "family 1, 2 or 3")->required();
    sharp->add_option("--p", p)->required();
    sharp->add_option("--d", d)->required();
    sharp->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (bound->parsed()) return run_bound(p, d);
        if (check->parsed()) return run_check(field, map);
        if (conj->parsed()) return run_conjugate(field, map, mobius);
        if (invp->parsed()) return run_invariant_point(field, map);
        if (findm->parsed()) return run_find_model(field, map, as_json);
        if (sharp->parsed()) return run_sharpness(family, p, d, as_json);
    } catch (const SyntaxError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const UnsupportedField& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const CaseInapplicable& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const PrecisionExhausted& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const WildRootUnsupported& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const WildBranchUnsupported& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ResidueFieldTooLarge& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 3;
}
