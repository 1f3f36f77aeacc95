"""Published known-answer vectors, frozen as (key, plaintext, ciphertext) hex.

Sources: FIPS 46 / NBS validation set and SP 800-20 (DES, TDES); FIPS-197
appendices, SP 800-38A F.1 and AESAVS GFSbox/VarTxt (AES); Schneier's
reference vectors (Blowfish).
"""

DES = [
    ("0000000000000000", "0000000000000000", "8CA64DE9C1B123A7"),
    ("FFFFFFFFFFFFFFFF", "FFFFFFFFFFFFFFFF", "7359B2163E4EDC58"),
    ("3000000000000000", "1000000000000001", "958E6E627A05557B"),
    ("1111111111111111", "1111111111111111", "F40379AB9E0EC533"),
    ("0123456789ABCDEF", "1111111111111111", "17668DFC7292532D"),
    ("1111111111111111", "0123456789ABCDEF", "8A5AE1F81AB8F2DD"),
    ("FEDCBA9876543210", "0123456789ABCDEF", "ED39D950FA74BCC4"),
    ("7CA110454A1A6E57", "01A1D6D039776742", "690F5B0D9A26939B"),
    ("0131D9619DC1376E", "5CD54CA83DEF57DA", "7A389D10354BD271"),
    ("07A1133E4A0B2686", "0248D43806F67172", "868EBB51CAB4599A"),
    ("3849674C2602319E", "51454B582DDF440A", "7178876E01F19B2A"),
    ("04B915BA43FEB5B6", "42FD443059577FA2", "AF37FB421F8C4095"),
    ("0113B970FD34F2CE", "059B5E0851CF143A", "86A560F10EC6D85B"),
    ("0170F175468FB5E6", "0756D8E0774761D2", "0CD3DA020021DC09"),
    ("43297FAD38E373FE", "762514B829BF486A", "EA676B2CB7DB2B7A"),
    ("133457799BBCDFF1", "0123456789ABCDEF", "85E813540F0AB405"),
    ("0123456789ABCDEF", "4E6F772069732074", "3FA40E8A984D4815"),
]

# Variable plaintext, key 0101...01 (parity-only, effectively zero).
DES_VARTXT = [
    ("0101010101010101", "8000000000000000", "95F8A5E5DD31D900"),
    ("0101010101010101", "4000000000000000", "DD7F121CA5015619"),
    ("0101010101010101", "2000000000000000", "2E8653104F3834EA"),
    ("0101010101010101", "1000000000000000", "4BD388FF6CD81D4F"),
    ("0101010101010101", "0800000000000000", "20B9E767B2FB1456"),
    ("0101010101010101", "0400000000000000", "55579380D77138EF"),
    ("0101010101010101", "0200000000000000", "6CC5DEFAAF04512F"),
    ("0101010101010101", "0100000000000000", "0D9F279BA5D87260"),
    ("0101010101010101", "0080000000000000", "D9031B0271BD5A0A"),
    ("0101010101010101", "0040000000000000", "424250B37C3DD951"),
]

# Permutation-operation test, plaintext zero.
DES_PERMUTATION = [
    ("1046913489980131", "0000000000000000", "88D55E54F54C97B4"),
    ("1007103489988020", "0000000000000000", "0C0CC00C83EA48FD"),
    ("10071034C8980120", "0000000000000000", "83BC8EF3A6570183"),
    ("1046103489988020", "0000000000000000", "DF725DCAD94EA2E9"),
    ("1086911519190101", "0000000000000000", "E652B53B550BE8B0"),
    ("1086911519580101", "0000000000000000", "AF527120C485CBB0"),
    ("5107B01519580101", "0000000000000000", "0F04CE393DB926D5"),
    ("1007B01519190101", "0000000000000000", "C9F00FFC74079067"),
    ("3107915498080101", "0000000000000000", "7CFD82A593252B4E"),
    ("3107919498080101", "0000000000000000", "CB49A2F9E91363E3"),
]

_TDES_3KEY = "0123456789ABCDEF23456789ABCDEF01456789ABCDEF0123"

# SP 800-20 sets with K1 = K2 = K3, plus a three-distinct-key example.
TDES = (
    [(k * 3, p, c) for k, p, c in DES_VARTXT]
    + [(k * 3, p, c) for k, p, c in DES_PERMUTATION]
    + [
        (_TDES_3KEY, "5468652071756663", "A826FD8CE53B855F"),
        (_TDES_3KEY, "6B2062726F776E20", "CCE21C8112256FE6"),
        (_TDES_3KEY, "666F78206A756D70", "68D5C05DD9B6B900"),
    ]
)

BLOWFISH = [
    ("0000000000000000", "0000000000000000", "4EF997456198DD78"),
    ("FFFFFFFFFFFFFFFF", "FFFFFFFFFFFFFFFF", "51866FD5B85ECB8A"),
    ("3000000000000000", "1000000000000001", "7D856F9A613063F2"),
    ("1111111111111111", "1111111111111111", "2466DD878B963C9D"),
    ("0123456789ABCDEF", "1111111111111111", "61F9C3802281B096"),
    ("1111111111111111", "0123456789ABCDEF", "7D0CC630AFDA1EC7"),
    ("FEDCBA9876543210", "0123456789ABCDEF", "0ACEAB0FC6A0A28D"),
    ("7CA110454A1A6E57", "01A1D6D039776742", "59C68245EB05282B"),
    ("0131D9619DC1376E", "5CD54CA83DEF57DA", "B1B8CC0B250F09A0"),
    ("07A1133E4A0B2686", "0248D43806F67172", "1730E5778BEA1DA4"),
    ("3849674C2602319E", "51454B582DDF440A", "A25E7856CF2651EB"),
    ("04B915BA43FEB5B6", "42FD443059577FA2", "353882B109CE8F1A"),
    ("0113B970FD34F2CE", "059B5E0851CF143A", "48F4D0884C379918"),
    ("0170F175468FB5E6", "0756D8E0774761D2", "432193B78951FC98"),
]

_K128_SEQ = "000102030405060708090a0b0c0d0e0f"
_K192_SEQ = _K128_SEQ + "1011121314151617"
_K256_SEQ = _K192_SEQ + "18191a1b1c1d1e1f"
_FIPS_PT = "00112233445566778899aabbccddeeff"
_K128 = "2b7e151628aed2a6abf7158809cf4f3c"
_K192 = "8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b"
_K256 = "603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4"
_ECB_PT = [
    "6bc1bee22e409f96e93d7e117393172a",
    "ae2d8a571e03ac9c9eb76fac45af8e51",
    "30c81c46a35ce411e5fbc1191a0a52ef",
    "f69f2445df4f9b17ad2b417be66c3710",
]
_Z128, _Z192, _Z256 = "00" * 16, "00" * 24, "00" * 32

AES128 = [
    (_K128_SEQ, _FIPS_PT, "69c4e0d86a7b0430d8cdb78070b4c55a"),
    (_K128, "3243f6a8885a308d313198a2e0370734", "3925841d02dc09fbdc118597196a0b32"),
    *zip([_K128] * 4, _ECB_PT, [
        "3ad77bb40d7a3660a89ecaf32466ef97",
        "f5d3d58503b9699de785895a96fdbaaf",
        "43b1cd7f598ece23881b00e3ed030688",
        "7b0c785e27e8ad3f8223207104725dd4",
    ]),
    (_Z128, "f34481ec3cc627bacd5dc3fb08f273e6", "0336763e966d92595a567cc9ce537f5e"),
    (_Z128, "9798c4640bad75c7c3227db910174e72", "a9a1631bf4996954ebc093957b234589"),
    (_Z128, "96ab5c2ff612d9dfaae8c31f30c42168", "ff4f8391a6a40ca5b25d23bedd44a597"),
    (_Z128, "6a118a874519e64e9963798a503f1d35", "dc43be40be0e53712f7e2bf5ca707209"),
    (_Z128, "cb9fceec81286ca3e989bd979b0cb284", "92beedab1895a94faa69b632e5cc47ce"),
    (_Z128, "b26aeb1874e47ca8358ff22378f09144", "459264f4798f6a78bacb89c15ed3d601"),
    (_Z128, "58c8e00b2631686d54eab84b91f0aca1", "08a4e2efec8a8e3312ca7460b9040bbf"),
    (_Z128, "80000000000000000000000000000000", "3ad78e726c1ec02b7ebfe92b23d9ec34"),
    (_Z128, "c0000000000000000000000000000000", "aae5939c8efdf2f04e60b9fe7117b2c2"),
    (_Z128, "e0000000000000000000000000000000", "f031d4d74f5dcbf39daaf8ca3af6e527"),
]

AES192 = [
    (_K192_SEQ, _FIPS_PT, "dda97ca4864cdfe06eaf70a0ec0d7191"),
    *zip([_K192] * 4, _ECB_PT, [
        "bd334f1d6e45f25ff712a214571fa5cc",
        "974104846d0ad3ad7734ecb3ecee4eef",
        "ef7afd2270e2e60adce0ba2face6444e",
        "9a4b41ba738d6c72fb16691603c18e0e",
    ]),
    (_Z192, "1b077a6af4b7f98229de786d7516b639", "275cfc0413d8ccb70513c3859b1d0f72"),
    (_Z192, "9c2d8842e5f48f57648205d39a239af1", "c9b8135ff1b5adc413dfd053b21bd96d"),
    (_Z192, "bff52510095f518ecca60af4205444bb", "4a3650c3371ce2eb35e389a171427440"),
    (_Z192, "51719783d3185a535bd75adc65071ce1", "4f354592ff7c8847d2d0870ca9481b7c"),
    (_Z192, "26aa49dcfe7629a8901a69a9914e6dfd", "d5e08bf9a182e857cf40b3a36ee248cc"),
    (_Z192, "941a4773058224e1ef66d10e0a6ee782", "067cd9d3749207791841562507fa9626"),
]

AES256 = [
    (_K256_SEQ, _FIPS_PT, "8ea2b7ca516745bfeafc49904b496089"),
    *zip([_K256] * 4, _ECB_PT, [
        "f3eed1bdb5d2a03c064b5a7e3db181f8",
        "591ccb10d410ed26dc5ba74a31362870",
        "b6ed21b99ca6f4f9f153e7b1beafed1d",
        "23304b7a39f9f3ff067d8d8f9e24ecc7",
    ]),
    (_Z256, "014730f80ac625fe84f026c60bfd547d", "5c9d844ed46f9885085e5d6a4f94c7d7"),
    (_Z256, "0b24af36193ce4665f2825d7b4749c98", "a9ff75bd7cf6613d3731c77c3b6d0c04"),
    (_Z256, "761c1fe41a18acf20d241650611d90f1", "623a52fcea5d443e48d9181ab32c7421"),
    (_Z256, "8a560769d605868ad80d819bdba03771", "38f2c7ae10612415d27ca190d27da8b4"),
    (_Z256, "91fbef2d15a97816060bee1feaa49afe", "1bc704f1bce135ceb810341b216d7abe"),
]

DES_ALL = DES + DES_VARTXT + DES_PERMUTATION
