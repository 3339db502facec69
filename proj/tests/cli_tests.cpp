// End-to-end checks of the command line surface: exit codes, output shape,
// cache behaviour. argv[1] is the spinelab binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

struct Run {
    int exit = -1;
    std::string out;
};

Run run(const std::string& bin, const std::string& args, const fs::path& dir, int idx) {
    fs::create_directories(dir);
    fs::path out = dir / ("o" + std::to_string(idx));
    std::string cmd = bin + " " + args + " --out " + out.string() + " 2>/dev/null";
    Run r;
    int rc = std::system(cmd.c_str());
    r.exit = rc >= 256 ? rc / 256 : rc;  // decode wait status
    std::ifstream f(out, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    return r;
}

long long count_lines(const std::string& s) {
    long long n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: cli_tests <spinelab binary>\n");
        return 1;
    }
    std::string bin = argv[1];
    fs::path dir = "cli-tmp";
    fs::remove_all(dir);
    int i = 0;

    auto r1 = run(bin, "enumerate --rank 2 --marks 0 --no-cache", dir, i++);
    expect(r1.exit == 0 && count_lines(r1.out) == 2, "enumerate (2,0) gives 2 records");
    expect(r1.out.find("\"n\":2") != std::string::npos &&
               r1.out.find("\"basepoint\":null") != std::string::npos,
           "graph json schema fields present");

    auto r2 = run(bin, "enumerate --rank 1 --marks 1 --no-cache", dir, i++);
    expect(r2.exit == 0 && count_lines(r2.out) == 1, "enumerate (1,1) gives 1 record");

    auto r3 = run(bin, "enumerate --rank 2 --marks 0 --degree-max 0", dir, i++);
    expect(r3.exit == 4, "degree filter without basepoint exits 4");

    auto r4 = run(bin, "enumerate --rank 0 --marks 0", dir, i++);
    expect(r4.exit != 0, "rank 0 is rejected");

    auto r5 = run(bin, "homology --rank 2 --marks 0 --max-dim 1 --no-cache", dir, i++);
    expect(r5.exit == 0 && r5.out.find("\"betti\":1") != std::string::npos &&
               r5.out.find("\"betti\":0") != std::string::npos,
           "homology (2,0) reports betti (1,0)");

    auto r6 = run(bin, "homology --rank 1 --marks 1 --no-cache", dir, i++);
    expect(r6.exit == 0 && r6.out.find("\"betti\":1") != std::string::npos,
           "homology (1,1) reports betti (1)");

    auto r7 = run(bin, "homology --rank 3 --marks 0 --budget 3 --no-cache", dir, i++);
    expect(r7.exit == 3, "tiny budget exits 3");

    auto r8 = run(bin, "stab-map --map alpha --rank 1 --marks 1 --dim 0 --no-cache", dir, i++);
    expect(r8.exit == 0 && r8.out.find("\"iso\":true") != std::string::npos,
           "alpha on H_0 at (1,1) is an isomorphism");

    auto r9 = run(bin, "stab-map --map nonsense --rank 1 --marks 1 --dim 0", dir, i++);
    expect(r9.exit == 4, "unknown map name exits 4");

    auto r10 = run(bin, "verify --suite lemma --n-max 2 --s-max 1 --no-cache", dir, i++);
    expect(r10.exit == 0 && r10.out.find("\"status\":\"pass\"") != std::string::npos,
           "lemma suite passes at (2,1)");

    auto r11 = run(bin, "verify --suite nonsense", dir, i++);
    expect(r11.exit == 4, "unknown suite exits 4");

    auto r12 = run(bin, "delta-check --count 2 --seed 3 --no-cache", dir, i++);
    expect(r12.exit == 0 && count_lines(r12.out) == 5, "delta-check runs specials plus 2");

    {
        fs::path cx = dir / "complex.json";
        auto rd = run(bin,
                      "homology --rank 2 --marks 0 --no-cache --dump-complex " + cx.string(),
                      dir, i++);
        std::ifstream f(cx, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        std::string complex = ss.str();
        expect(rd.exit == 0 && complex.find("\"dims\"") != std::string::npos &&
                   complex.find("\"cells\"") != std::string::npos &&
                   complex.find("\"boundary\"") != std::string::npos &&
                   complex.find("\"graph\"") != std::string::npos &&
                   complex.find("\"flag\"") != std::string::npos,
               "dumped complex carries dims/cells/boundary with spine cell labels");
    }

    // cache round trip: second run must reproduce the same bytes
    fs::path cache = dir / "cache";
    auto c1 = run(bin, "enumerate --rank 3 --marks 1 --cache-dir " + cache.string(), dir, i++);
    bool cache_file = fs::exists(cache) && !fs::is_empty(cache);
    auto c2 = run(bin, "enumerate --rank 3 --marks 1 --cache-dir " + cache.string(), dir, i++);
    expect(c1.exit == 0 && c2.exit == 0 && cache_file && c1.out == c2.out,
           "cache stores and reproduces enumeration bytes");

    auto rbad = run(bin, "enumerate --rank 2", dir, i++);
    expect(rbad.exit == 4, "missing required flag exits 4");

    fs::remove_all(dir);
    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
