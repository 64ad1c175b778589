// Writes the images used by the CLI tests into the given directory.
#include <cstdio>
#include <string>

#include "se2n/experiments.hpp"
#include "se2n/image_io.hpp"

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : ".";
    const int M = 128;
    se2n::Image stripe = se2n::stripe_image(M);
    const se2n::Image mask = se2n::stripe_gap_mask(M);
    for (std::size_t i = 0; i < stripe.v.size(); ++i)
        if (mask.v[i] > 0.5) stripe.v[i] = 0.0;
    se2n::save_pgm(dir + "/stripe.pgm", stripe);
    se2n::save_pgm(dir + "/mask.pgm", mask);
    se2n::save_pgm(dir + "/scene.pgm", se2n::synthetic_scene(64, 1));
    se2n::save_pgm(dir + "/tiny.pgm", se2n::synthetic_scene(16, 1));
    se2n::save_pgm(dir + "/mask_empty.pgm", se2n::Image(64, 64));
    se2n::save_pgm(dir + "/scene_half.pgm", se2n::synthetic_scene(32, 2));
    std::printf("fixtures written to %s\n", dir.c_str());
    return 0;
}
