// Encrypt a synthetic image and print the statistical and diffusion metrics.
#include <iostream>

#include "cryptochaos.hpp"

using namespace cryptochaos;

int main() {
  SeededRandom rng(1);
  auto img = synthetic_image(1);
  bench::CryptoChaosAdapter cipher;
  cipher.prepare(rng);

  auto ct = bench::ciphertext_image(cipher, cipher.encrypt(img.pixels(), rng), img);
  auto d = bench::one_pixel_diffusion(cipher, img, rng);
  auto dist = metrics::mse_psnr(img, ct);

  std::cout << "plaintext entropy   " << metrics::shannon_entropy(img.pixels()) << '\n'
            << "ciphertext entropy  " << metrics::shannon_entropy(ct.pixels()) << '\n'
            << "correlation         " << metrics::adjacent_correlation(ct.pixels()) << '\n'
            << "NPCR / UACI (%)     " << d.npcr << " / " << d.uaci << '\n'
            << "MSE / PSNR (dB)     " << dist.mse << " / " << dist.psnr_db << '\n'
            << nist::run_suite(ct.pixels()).summary() << '\n';
}
