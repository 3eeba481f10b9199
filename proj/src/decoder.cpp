#include "polar/decoder.hpp"

#include <chrono>
#include <stdexcept>

namespace polar {

Gf2System assemble_system(const ReceivedWord& received, const CodePlan& plan,
                          const SideInformation& side) {
    const std::size_t N = plan.code().block_length();
    if (received.size() != N) throw std::invalid_argument("assemble_system: length mismatch");
    if (!plan.has_decode_tables())
        throw std::invalid_argument("assemble_system: block length too large for linear decode");

    std::vector<bool> dropped(N + 1, false);
    for (std::uint32_t pos : side.dropped_positions) {
        if (pos < 1 || pos > N)
            throw std::invalid_argument("assemble_system: dropped position out of range");
        dropped[pos] = true;
    }

    Gf2System sys;
    sys.unknown_ids = plan.message_positions();
    sys.coeff.reserve(N);
    sys.rhs.reserve(N);
    for (std::uint32_t pos = 1; pos <= N; ++pos) {
        if (dropped[pos] || received.symbols[pos - 1] == Symbol::erased) continue;
        const bool y = received.symbols[pos - 1] == Symbol::one;
        sys.add_equation(plan.equation_row(pos), y ^ plan.frozen_rhs(pos));
    }
    return sys;
}

DecodeResult decode(const ReceivedWord& received, const CodePlan& plan,
                    const SideInformation& side) {
    Gf2System sys = assemble_system(received, plan, side);

    const auto t0 = std::chrono::steady_clock::now();
    SolveOutcome sol = solve_gf2(sys);
    const auto t1 = std::chrono::steady_clock::now();

    DecodeResult out;
    out.equations_used = sys.equations();
    out.solve_time_s = std::chrono::duration<double>(t1 - t0).count();
    switch (sol.tag) {
        case SolveTag::unique:
            out.tag = DecodeTag::success;
            out.message = std::move(sol.assignment);
            break;
        case SolveTag::underdetermined:
            out.tag = DecodeTag::ambiguous;
            out.rank_deficit = sol.rank_deficit;
            break;
        case SolveTag::inconsistent:
            out.tag = DecodeTag::inconsistent;
            break;
    }
    return out;
}

DecodeResult decode_flip(const ReceivedWord& received, const CodePlan& plan) {
    SideInformation side;
    side.dropped_positions = received.flagged_flips;
    return decode(received, plan, side);
}

bool verify(const DecodeResult& result, const BitWord& original) {
    if (result.tag != DecodeTag::success)
        throw std::invalid_argument("verify: result is not a success");
    return result.message == original;
}

}  // namespace polar
