#!/usr/bin/env python3
"""Public-key encryption on GL(3, 1009), then break it with public data only.

Encryption blinds the message with K = phi^r(a) c1; decryption recomputes
K from the private exponent.  But (a, c1) is exactly a pair of exchange
values, so the dimension attack recovers K from the wire and the plaintext
falls out.
"""

import numpy as np

from sdpke import keygen, mr_decrypt, mr_encrypt, mr_message_recovery, random_params

rng = np.random.default_rng(99)

platform = random_params("gl", rng).build()
recipient = keygen(platform, rng, exponent_bits=16)
message = platform.random_element(rng)
print("plaintext:       ", message.to_obj())

ct = mr_encrypt(platform, recipient.public_value, message, rng)
print("ciphertext c1:   ", ct.c1.to_obj())
print("ciphertext c2:   ", ct.c2.to_obj())

decrypted = mr_decrypt(platform, recipient.exponent, recipient.public_value, ct)
assert decrypted == message
print("decrypts correctly with the private exponent")

stolen = mr_message_recovery(platform, recipient.public_value, ct)
assert stolen == message
print("eavesdropper recovers the identical plaintext without any secret:")
print("recovered:       ", stolen.to_obj())
