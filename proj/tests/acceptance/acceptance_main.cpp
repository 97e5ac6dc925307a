// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <iostream>
#include <vector>

#include "goodred/families.hpp"
#include "goodred/parse.hpp"
#include "support/gen.hpp"

using namespace goodred;
using namespace goodred::testgen;

namespace {

int g_failures = 0;

struct Criterion {
    const char* name;
    bool pass = true;
    std::string detail;
    std::chrono::steady_clock::time_point start;

    explicit Criterion(const char* n) : name(n), start(std::chrono::steady_clock::now()) {}
    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void require(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
    ~Criterion() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "  (" << ms << " ms)";
        if (!detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!pass) ++g_failures;
    }
};

// independent piecewise oracle for the bound: brute-force decomposition
long long bound_oracle(long long p, long long d) {
    auto pow_ll = [](long long b, long long e) {
        long long r = 1;
        while (e--) r *= b;
        return r;
    };
    if (d >= 3 && p >= 2) {
        for (long long e = 1; pow_ll(p, e) <= d; ++e) {
            long long q = pow_ll(p, e);
            if (d % q == 0 && (d / q) % p != 0) return q * (d - 1);
        }
        for (long long e = 1; pow_ll(p, e) <= d - 1; ++e) {
            long long q = pow_ll(p, e);
            if ((d - 1) % q == 0 && ((d - 1) / q) % p != 0) return d * q;
        }
    }
    return d + 1;
}

void criterion1() {
    Criterion c("1 degree bound grid and envelope");
    for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL, 11LL}) {
        for (long long d = 2; d <= 12; ++d) {
            long long B = degree_bound(p, d);
            if (B != bound_oracle(p, d))
                c.fail("mismatch at p=" + std::to_string(p) + " d=" + std::to_string(d));
            if (d >= 3 && B > d * (d - 1))
                c.fail("envelope B <= d(d-1) fails at p=" + std::to_string(p) +
                       " d=" + std::to_string(d));
            if ((d == 2 || p > d) && B != d + 1)
                c.fail("B = d+1 fails at p=" + std::to_string(p) + " d=" + std::to_string(d));
        }
    }
    c.require(degree_bound(2, 4) == 12, "B(2,4)");
    c.require(degree_bound(2, 3) == 6, "B(2,3)");
    c.require(degree_bound(3, 10) == 90, "B(3,10)");
}

void criterion2() {
    Criterion c("2 family 3 at (3,2): sharp with model exactly 1/z^2");
    auto rep = verify_sharpness(3, 3, 2);
    c.require(rep.sharp, "not sharp");
    c.require(rep.B == 3, "B != 3");
    c.require(rep.lower_bound == 3, "lower bound != 3");
    c.require(rep.model_degree == 3, "model degree != 3");
    bool exact = rep.psi.num().degree() == 0 && rep.psi.den().degree() == 2 &&
                 rep.psi.num()[0].certainly_equal(
                     PuiseuxElement::one(rep.psi.config()).promote(rep.psi.level())) &&
                 rep.psi.den()[2].certainly_equal(
                     PuiseuxElement::one(rep.psi.config()).promote(rep.psi.level())) &&
                 rep.psi.den()[0].is_exact_zero() && rep.psi.den()[1].is_exact_zero();
    c.require(exact, "model is not exactly 1/z^2");
    for (auto& f : rep.failures) c.fail(f);
}

void criterion3() {
    Criterion c("3 family 1 at (2,4): sharp at B = 12");
    auto rep = verify_sharpness(1, 2, 4);
    c.require(rep.sharp, "not sharp");
    c.require(rep.B == 12, "B != 12");
    c.require(rep.lower_bound == 12, "lower bound != lcm(4,3)");
    c.require(rep.model_degree == 12, "model degree != 12");
    // monic conjugate, non-lead inner coefficients strictly small or vanishing
    c.require(rep.psi.den().degree() == 0, "model not a polynomial");
    c.require(rep.psi.num().lead().certainly_equal(
                  PuiseuxElement::one(rep.psi.config()).promote(rep.psi.level())),
              "model not monic with lead exactly 1");
    for (auto& a : rep.audit)
        if (!a.bound_holds || !a.binomial_vanishes)
            c.fail("inner coefficient audit at j=" + std::to_string(a.j));
    c.require(rep.invariant_point.radius_val() == Rational(1, 3), "radius != 1/3");
    c.require(rep.invariant_point.center().val() == Valuation(Rational(1, 4)),
              "v(center) != 1/4");
    for (auto& f : rep.failures) c.fail(f);
}

void criterion4() {
    Criterion c("4 family 2 at (2,3): sharp at B = 6");
    auto rep = verify_sharpness(2, 2, 3);
    c.require(rep.sharp, "not sharp");
    c.require(rep.B == 6, "B != 6");
    c.require(rep.lower_bound == 6, "lower bound != lcm(3,2)");
    c.require(rep.model_degree == 6, "model degree != 6");
    ReducedMap rm = reduce(rep.psi);
    const ResidueField* F = rm.F;
    RPoly wn = {F->one(), F->zero(), F->zero(), F->one()};
    RPoly wd = {F->zero(), F->zero(), F->one()};
    ReducedMap want;
    want.F = F;
    want.num = wn;
    want.den = wd;
    want.degree = 3;
    c.require(!rm.is_infinity && rm.equal_as_map(want), "reduction != (z^3+1)/z^2");
    for (auto& f : rep.failures) c.fail(f);
}

void criterion5() {
    Criterion c("5 reduction-degree test == resultant test on 1000 random maps");
    Rng rng(101);
    auto cfg = FieldConfig::get(5, 1);
    int count = 0, disagreements = 0;
    while (count < 1000) {
        auto phi = random_map(rng, cfg, uniform(rng, 2, 4));
        ++count;
        try {
            has_good_reduction(phi);  // throws on disagreement
        } catch (const InconsistentCharacterizations&) {
            ++disagreements;
        }
    }
    c.require(disagreements == 0,
              std::to_string(disagreements) + " disagreements out of 1000");
}

void criterion6() {
    Criterion c("6 disk-image sampling oracle on 50 instances, 200 points each");
    Rng rng(102);
    auto cfg = FieldConfig::get(5, 1);
    const ResidueField* F = ResidueField::get(5, 1);
    int instances = 0;
    while (instances < 50) {
        auto phi = random_map(rng, cfg, uniform(rng, 2, 3));
        auto a = random_element(rng, cfg, Level{1, 1}, 0, 2, 2);
        Rational rho(uniform(rng, 0, 2));
        DiskImage base;
        try {
            base = disk_image(phi, a, rho);
        } catch (const PoleInDisk&) {
            continue;
        } catch (const PrecisionExhausted&) {
            continue;
        }
        ++instances;
        // sample at three depths approaching rho; per depth the minimum
        // attained valuation must equal the image radius at that depth exactly
        for (long long k = 1; k <= 3; ++k) {
            Rational depth = rho + Rational(1, 1 << k);
            DiskImage at_depth = disk_image(phi, a, depth);
            PuiseuxElement tq = PuiseuxElement::t_power(cfg, depth);
            Level lv = join(join(a.level(), tq.level()), phi.level());
            std::optional<Rational> min_seen;
            int per_depth = k == 3 ? 66 : 67;
            for (int s = 0; s < per_depth; ++s) {
                // x = a + c * t^depth + (deeper noise)
                RElem cu = random_residue(rng, F, false);
                PuiseuxElement x = a.promote(lv) + tq.promote(lv).scalar_mul(cu);
                if (uniform(rng, 0, 1))
                    x = x + tq.promote(lv).shift_t(Rational(1)).scalar_mul(random_residue(rng, F));
                Point img = phi.eval(Point::finite(x));
                if (img.inf) {
                    c.fail("sample mapped to infinity despite no pole in the disk");
                    return;
                }
                PuiseuxElement diff = img.v - base.center.v.promote(img.v.level());
                if (diff.is_exact_zero()) continue;  // attains far interior
                Rational v = diff.val().finite();
                if (!(v > base.radius_val)) {
                    c.fail("sample escaped the reported image disk");
                    return;
                }
                if (!min_seen || v < *min_seen) min_seen = v;
            }
            if (!min_seen || *min_seen != at_depth.radius_val) {
                c.fail("sampled minimum " +
                       (min_seen ? min_seen->str() : std::string("none")) +
                       " differs from sigma " + at_depth.radius_val.str() + " at depth " +
                       depth.str());
                return;
            }
        }
    }
}

void criterion7() {
    Criterion c("7 model recovery on 100 random conjugates within the bound");
    Rng rng(103);
    auto cfg = FieldConfig::get(5, 1);
    const std::vector<Level> levels = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {6, 1},
                                       {1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}};
    int ok = 0, inconclusive = 0, failures = 0;
    for (int i = 0; i < 100; ++i) {
        long long d = uniform(rng, 2, 3);
        auto psi = random_good_reduction_map(rng, cfg, d);
        Level hl = levels[(size_t)uniform(rng, 0, (long long)levels.size() - 1)];
        auto h = random_mobius(rng, cfg, hl);
        RationalMap phi = conjugate(psi, h);
        try {
            auto mr = find_good_model(phi);
            if (!mr) {
                ++inconclusive;
                continue;
            }
            bool good = has_good_reduction(mr->psi) && mr->extension_degree <= mr->bound;
            if (good) ++ok;
            else {
                ++failures;
                c.fail("model violates the bound: degree " +
                       std::to_string(mr->extension_degree) + " > " +
                       std::to_string(mr->bound));
            }
        } catch (const WildBranchUnsupported&) {
            ++inconclusive;
        } catch (const WildRootUnsupported&) {
            ++inconclusive;
        }
    }
    c.require(failures == 0, std::to_string(failures) + " hard failures");
    c.require(inconclusive < 10,
              "inconclusive rate " + std::to_string(inconclusive) + "% (must be < 10%)");
    c.require(ok + inconclusive == 100, "accounting error");
    c.detail += (c.detail.empty() ? "" : "; ") + std::to_string(ok) + " verified, " +
                std::to_string(inconclusive) + " inconclusive";
}

void criterion8() {
    Criterion c("8 three-point lemma, fixed-point counts, multiplier invariance");
    Rng rng(104);
    auto cfg = FieldConfig::get(5, 1);
    const ResidueField* F = ResidueField::get(5, 1);

    // three-point lemma on 500 instances
    int done = 0;
    for (int i = 0; i < 2000 && done < 500; ++i) {
        Level lv{(long long)uniform(rng, 1, 3), 1};
        PuiseuxElement center = random_element(rng, cfg, lv, -2 * lv.e, 3 * lv.e, 2);
        Rational rho(uniform(rng, -2 * lv.e, 3 * lv.e), lv.e);
        TypeIIPoint xi(center, rho);
        PuiseuxElement tr = PuiseuxElement::t_power(cfg, rho).promote(xi.level());
        PuiseuxElement deep =
            PuiseuxElement::t_power(cfg, rho + Rational(1)).promote(xi.level());
        Point a = Point::finite(xi.center() + deep.scalar_mul(random_residue(rng, F)));
        Point b = Point::finite(xi.center() + tr + deep.scalar_mul(random_residue(rng, F)));
        Point x = uniform(rng, 0, 1)
                      ? Point::infinity(cfg)
                      : Point::finite(xi.center() +
                                      PuiseuxElement::t_power(cfg, rho - Rational(1))
                                          .promote(xi.level()));
        MobiusMap h = random_mobius(rng, cfg, lv);
        try {
            TypeIIPoint im = mobius_on_type2(h, xi);
            Direction ea = direction_of(h.apply(a), im);
            Direction eb = direction_of(h.apply(b), im);
            Direction ec = direction_of(h.apply(x), im);
            if (ea.same_direction(eb) || ea.same_direction(ec) || eb.same_direction(ec)) {
                c.fail("images share a direction");
                break;
            }
            ++done;
        } catch (const PrecisionExhausted&) {
            continue;
        }
    }
    c.require(done >= 500, "only " + std::to_string(done) + " three-point instances");

    // fixed-point multiplicity sums on every generated map
    int maps = 0;
    for (int i = 0; i < 600 && maps < 300; ++i) {
        auto phi = random_map(rng, cfg, uniform(rng, 2, 3));
        try {
            auto fps = fixed_points(phi);
            long long total = 0;
            for (auto& fp : fps) total += fp.multiplicity;
            if (total != phi.degree() + 1) {
                c.fail("multiplicities sum to " + std::to_string(total));
                break;
            }
            ++maps;
        } catch (const Error&) {
            continue;
        }
    }
    c.require(maps >= 300, "only " + std::to_string(maps) + " fixed-point maps");

    // multiplier multiset invariance on 200 conjugations
    int conj = 0;
    for (int i = 0; i < 800 && conj < 200; ++i) {
        auto phi = random_map(rng, cfg, 2);
        auto h = random_mobius(rng, cfg);
        try {
            auto f1 = fixed_points(phi);
            auto f2 = fixed_points(conjugate(phi, h));
            std::vector<PuiseuxElement> m2;
            for (auto& fp : f2)
                for (long long k = 0; k < fp.multiplicity; ++k) m2.push_back(fp.multiplier);
            std::vector<bool> used(m2.size(), false);
            long long matched = 0;
            for (auto& fp : f1)
                for (long long k = 0; k < fp.multiplicity; ++k)
                    for (size_t j = 0; j < m2.size(); ++j) {
                        if (used[j]) continue;
                        Level lv = join(fp.multiplier.level(), m2[j].level());
                        if (fp.multiplier.promote(lv).agree_up_to_prec(m2[j].promote(lv))) {
                            used[j] = true;
                            ++matched;
                            break;
                        }
                    }
            if (matched != phi.degree() + 1) {
                c.fail("multiplier multisets differ");
                break;
            }
            ++conj;
        } catch (const Error&) {
            continue;
        }
    }
    c.require(conj >= 200, "only " + std::to_string(conj) + " conjugation instances");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " criteria failed\n";
    return 1;
}
