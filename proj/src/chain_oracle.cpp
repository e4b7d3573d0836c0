#include "pebblechain/chain_oracle.hpp"

namespace pebblechain {

FullChain build_chain(const HashProvider &provider, const Digest &seed, std::size_t n,
                      const std::optional<std::vector<Bytes>> &evidence, CombineMode mode) {
  if (n < 1) throw contract_error("chain length must be at least 1");
  if (seed.width() != provider.width()) throw contract_error("seed width mismatch");
  if (evidence && evidence->size() != n)
    throw contract_error("evidence list must have exactly n entries");

  FullChain chain;
  chain.provider = &provider;
  chain.mode = mode;
  chain.n = n;
  chain.elements.reserve(n + 1);
  chain.elements.push_back(seed);
  if (evidence) chain.evidence.reserve(n);

  for (std::size_t step = 1; step <= n; ++step) {
    const Digest &prev = chain.elements.back();
    if (evidence) {
      CompressedEvidence ce = provider.compress((*evidence)[step - 1]);
      chain.elements.push_back(provider.evaluate(combine(prev, ce, mode)));
      chain.evidence.push_back(std::move(ce));
    } else {
      chain.elements.push_back(provider.evaluate(prev.bytes));
    }
  }
  return chain;
}

const Digest &element_at(const FullChain &chain, std::size_t position) {
  if (position < 1 || position > chain.n)
    throw contract_error("position out of range");
  return chain.elements[chain.n - position];
}

const Digest &chain_anchor(const FullChain &chain) { return chain.elements[chain.n]; }

std::string dump_chain(const FullChain &chain) {
  std::string out;
  for (std::size_t pos = 1; pos <= chain.n; ++pos) {
    out += std::to_string(pos);
    out += '\t';
    out += to_hex(element_at(chain, pos));
    out += '\n';
  }
  return out;
}

}  // namespace pebblechain
