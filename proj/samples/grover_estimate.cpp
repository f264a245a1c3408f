// Grover cost model across key sizes, next to the published reference rows.
#include <iostream>

#include "cryptochaos.hpp"

using namespace cryptochaos::quantum;

int main() {
  for (unsigned k : {64u, 128u, 192u, 256u}) {
    GroverParams p;
    p.key_bits = k;
    auto e = estimate(p);
    std::cout << "k = " << k << ": 2^" << to_string(e.effective_keyspace_bits) << " effective, " << scientific(e.iterations)
              << " iterations, " << scientific(e.total_t_gates) << " T gates\n";
  }
  std::cout << "\nreference rows (not derived from the model):\n";
  for (const auto& r : published_reference_table())
    std::cout << "  " << r.algorithm << "  " << r.t_gate_count << "  " << r.grover_speedup_estimate << '\n';
}
