#pragma once

#include "addiviol/maxoverlap.hpp"
#include "addiviol/renyi.hpp"
#include "addiviol/tensor.hpp"

#include <string>

namespace addiviol {

enum class MultiCopyInput { totally_antisymmetric, pairing, optimized };

std::string to_string(MultiCopyInput kind);

struct MultiCopyResult {
    int d = 0;
    int n = 0;
    MultiCopyInput input_kind = MultiCopyInput::optimized;
    RenyiOrder p = RenyiOrder::one();
    double entropy = 0.0;          // S_p of the joint output, bits
    double single_copy_sum = 0.0;  // n * 1 bit for the antisymmetric channel
    SchmidtSpectrum spectrum;
    bool converged = true;
};

// Normalized determinant (Slater) state in (C^k)^(x)k.
PureState totally_antisymmetric_input(int k);

// Product of maximally entangled input pairs over copies (1,2), (3,4), ...;
// an odd copy count appends the first basis input (a single minimally
// entangled antisymmetric vector after embedding).
PureState pairing_input(int d, int n);

// Embeds the n-copy input through the antisymmetric-subspace isometry on
// each copy, traces out every A factor and evaluates S_p of the joint
// output. States above 1e7 amplitudes require large_ok.
MultiCopyResult multicopy_output_entropy(int d, int n, const PureState& input, RenyiOrder p,
                                         bool large_ok = false);

// p = infinity search: grouped-cut seesaw on P_a^(x)n. The reported entropy
// is evaluated at the witness input it finds.
MultiCopyResult multicopy_min_search(int d, int n, const SeesawOptions& opts = {},
                                     bool large_ok = false);

}  // namespace addiviol
