#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "ftdo/serialize.hpp"
#include "ftdo/verify.hpp"

using namespace ftdo;

namespace {

std::string bytes(const Oracle& o) {
    std::ostringstream out;
    save_oracle(o, out);
    return out.str();
}

}  // namespace

TEST_CASE("serial and parallel builds are byte-identical") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Graph g = fx::er(90, 7, seed);
        const auto sources = sample_sources(g.vertex_count(), 6, seed);
        BuildParams serial, parallel;
        serial.exec = Execution::serial;
        parallel.exec = Execution::parallel;
        serial.perturb_seed = parallel.perturb_seed = seed;
        BuildReport rs, rp;
        const Oracle a = build_oracle(g, sources, serial, &rs);
        const Oracle b = build_oracle(g, sources, parallel, &rp);
        CHECK(bytes(a) == bytes(b));
        CHECK(rs.r2_good == rp.r2_good);
        CHECK(rs.max_gap == rp.max_gap);

        const auto vs = exhaustive_check(a, Execution::serial);
        const auto vp = exhaustive_check(b, Execution::parallel);
        CHECK(vs.queries == vp.queries);
        CHECK(vs.max_probes == vp.max_probes);
        for (int k = 0; k < 6; ++k) CHECK(vs.tag_counts[k] == vp.tag_counts[k]);
    }
}

TEST_CASE("save and load preserve every table") {
    const Graph g = fx::er(60, 6, 9);
    const Oracle o = build_oracle(g, sample_sources(g.vertex_count(), 5, 9), {});
    const std::string raw = bytes(o);
    std::istringstream in(raw);
    const Oracle back = load_oracle(in);
    CHECK(bytes(back) == raw);
    CHECK(back.sizes().tables == o.sizes().tables);
    CHECK(exhaustive_check(back, Execution::parallel).clean());
}

TEST_CASE("load rejects damaged files") {
    const Oracle o = build_oracle(cycle_graph(6), {0}, {});
    const std::string raw = bytes(o);
    auto load = [](std::string s) {
        std::istringstream in(s);
        return load_oracle(in);
    };
    CHECK_THROWS_AS(load(""), SerializeError);
    CHECK_THROWS_AS(load("FTDORACX" + raw.substr(8)), SerializeError);
    CHECK_THROWS_AS(load(raw.substr(0, raw.size() / 2)), SerializeError);
    std::string version = raw;
    version[8] = 99;
    CHECK_THROWS_AS(load(version), SerializeError);
    CHECK_NOTHROW(load(raw));
}

TEST_CASE("thread count setting") {
    set_thread_count(2);
#ifdef FTDO_HAVE_OPENMP
    CHECK(thread_count() == 2);
#endif
    set_thread_count(0);
    CHECK(thread_count() >= 1);
}
