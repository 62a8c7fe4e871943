#include "acat/random.hpp"

#include <algorithm>
#include <string>

#include "acat/error.hpp"
#include "acat/morphism.hpp"

namespace acat {

namespace {

SemiFreeDGA seed_unknot(const Field* f, const SpecPtr& spec) {
    SemiFreeDGA dga({1}, GradingMode::Z, f, spec, {{1, 1}});
    dga.add_chord({"a", 1, 1, 1});
    auto t = GroupElement::generator(spec, 1, 1);
    dga.set_differential("a", dga.unit() + Poly::term(f, spec, Word::group(t), 1));
    return dga;
}

}  // namespace

SemiFreeDGA random_dga(std::mt19937& rng, const Field* f, size_t max_chords,
                       size_t max_word_len) {
    auto spec = FreeProductSpec::make({{1, 1}});
    auto pick = [&](int n) { return (int)(rng() % (unsigned)n); };

    SemiFreeDGA dga({1}, GradingMode::Z, f, spec, {{1, 1}});
    switch (pick(3)) {
        case 0: break;  // start empty
        case 1: dga = seed_unknot(f, spec); break;
        case 2: {
            dga.add_chord({"s", pick(5) - 2, 1, 1});
            dga.set_differential("s", dga.zero());
            break;
        }
    }

    auto max_len = [&](const SemiFreeDGA& d) {
        size_t m = 0;
        for (size_t i = 0; i < d.num_chords(); ++i)
            for (const auto& [w, c] : d.d((int)i).terms()) (void)c, m = std::max(m, w.length());
        return m;
    };
    auto random_unit = [&]() -> UnitCoef {
        uint64_t c = 1 + (uint64_t)pick((int)f->order() - 1);
        if (pick(3) == 0) return {c, GroupElement::generator(spec, 1, pick(2) ? 1 : -1)};
        return {c, GroupElement::identity()};
    };

    int serial = 0;
    int ops = 2 + pick(4);
    for (int op = 0; op < ops; ++op) {
        if (dga.num_chords() + 2 <= max_chords && (dga.num_chords() == 0 || pick(2) == 0)) {
            int deg = pick(6) - 2;
            std::string n1 = "g" + std::to_string(serial++);
            std::string n2 = "g" + std::to_string(serial++);
            dga = stabilise(dga, deg, 1, 1, n1, n2).first;
            continue;
        }
        // random elementary pushforward; retry a few times, skip if none fit
        for (int attempt = 0; attempt < 4; ++attempt) {
            const ChordGen& q = dga.chord(pick((int)dga.num_chords()));
            Poly u = dga.zero();
            for (size_t i = 0; i < dga.num_chords(); ++i) {
                const ChordGen& g1 = dga.chord((int)i);
                if (g1.name == q.name) continue;
                if (dga.degrees_equal(g1.degree, q.degree) && pick(3) == 0)
                    u = u + dga.gen((int)i).scaled(1 + (uint64_t)pick((int)f->order() - 1));
                for (size_t j = 0; j < dga.num_chords(); ++j) {
                    const ChordGen& g2 = dga.chord((int)j);
                    if (g2.name == q.name) continue;
                    if (dga.degrees_equal(g1.degree + g2.degree, q.degree) && pick(6) == 0)
                        u = u + dga.gen((int)i) * dga.gen((int)j);
                }
            }
            if (q.degree == 0 && pick(3) == 0) u = u + dga.unit();
            try {
                SemiFreeDGA cand =
                    elementary_pushforward(dga, q.name, random_unit(), random_unit(), u).first;
                if (max_len(cand) <= max_word_len) {
                    dga = cand;
                    break;
                }
            } catch (const error&) {
                // substitution did not give a chain map companion; try again
            }
        }
    }
    return dga;
}

}  // namespace acat
