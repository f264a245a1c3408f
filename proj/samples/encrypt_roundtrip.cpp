// Seal a message to a recipient and open it again.
#include <iostream>

#include "cryptochaos.hpp"

using namespace cryptochaos;

int main() {
  SystemRandom rng;
  auto recipient = keyforge::generate_keypair(rng);
  keyforge::Passphrase passphrase("a shared passphrase");

  std::string message = "attack at dawn";
  Bytes sealed = envelope::encrypt_file(passphrase, recipient.public_key, as_bytes(message), rng);
  std::cout << "envelope (" << sealed.size() << " bytes): " << to_hex(sealed) << '\n';

  Bytes opened = envelope::decrypt_file(passphrase, recipient.secret, sealed);
  std::cout << "opened: " << std::string(opened.begin(), opened.end()) << '\n';

  try {
    envelope::decrypt_file(keyforge::Passphrase("wrong"), recipient.secret, sealed);
  } catch (const Error& e) {
    std::cout << "wrong passphrase: " << e.what() << '\n';
  }
}
