//! Bundled data files, embedded at compile time and checksummed.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::GroupSpec;

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
    /// SHA-256 of `text`, hex encoded.
    pub sha256: &'static str,
}

pub static FIXTURES: &[Fixture] = &[
    Fixture {
        name: "g1440.grp",
        description: "A4 x S5 in degree 9.",
        text: include_str!("../fixtures/g1440.grp"),
        sha256: "a804c63ef6f2af700760cda358d404d5acd047761aa082bbcd6129e0631d1b7c",
    },
    Fixture {
        name: "g1440_h1.grp",
        description: "First D6 subgroup of `g1440`.",
        text: include_str!("../fixtures/g1440_h1.grp"),
        sha256: "82be95bee45c8f7cc261b23ad5cdaaca27d4cec055cbce520136ccf478ed4c30",
    },
    Fixture {
        name: "g1440_h2.grp",
        description: "Second D6 subgroup of `g1440`.",
        text: include_str!("../fixtures/g1440_h2.grp"),
        sha256: "9c8db472fc6a2d74525bf119c177086b27fe071009b7d73ccc5cc5319e44d94e",
    },
    Fixture {
        name: "g384.grp",
        description: "Transitive group 32T9403 of order 384.",
        text: include_str!("../fixtures/g384.grp"),
        sha256: "fa56cb571f30468e4a3f4abbbf3bff8218729a8a111a91c265ed1551b45abb3a",
    },
    Fixture {
        name: "g384_factors.txt",
        description: "Factorization of the index-32 intertwiner determinant.",
        text: include_str!("../fixtures/g384_factors.txt"),
        sha256: "f7c5d073fc4e5d427973266d46cda0839dc79ee53e409e27447a8339c1dae12c",
    },
    Fixture {
        name: "g384_h1.grp",
        description: "Index-32 subgroup `<s0, s1>` of `g384`.",
        text: include_str!("../fixtures/g384_h1.grp"),
        sha256: "5178eff5f7454ba7efb148a125ec9e264da73e19a02125ab9b6dea6026065e23",
    },
    Fixture {
        name: "g384_h2.grp",
        description: "Index-32 subgroup `<s0, s2>` of `g384`.",
        text: include_str!("../fixtures/g384_h2.grp"),
        sha256: "700b71bf31f29fa0af5eea05e7c7cc9d5063e85beab2f9d0938d03653e31ff02",
    },
    Fixture {
        name: "g384_printed.pat",
        description: "The index-32 intertwiner pattern in its printed variable labelling.",
        text: include_str!("../fixtures/g384_printed.pat"),
        sha256: "993d50561b38740792c8c625814d70b45c85482043c2c1321b364d39723f193c",
    },
    Fixture {
        name: "g5760_factors.txt",
        description: "Factorization of the index-96 intertwiner determinant for 16T1654.",
        text: include_str!("../fixtures/g5760_factors.txt"),
        sha256: "d49f4def8ea05dfc3898355b65258edfcfee39d3197aedc9fdb6341288972dd4",
    },
    Fixture {
        name: "s21_h1.grp",
        description: "Degree-21 representation of the group with identifier <48,12>.",
        text: include_str!("../fixtures/s21_h1.grp"),
        sha256: "0f35671c493b2e4d7136b76eb156d11b9d3a075e188a7266d4cd184e572da48b",
    },
    Fixture {
        name: "s21_h2.grp",
        description: "Degree-21 representation of the group with identifier <48,13>.",
        text: include_str!("../fixtures/s21_h2.grp"),
        sha256: "1c16cbc81b6ec95b9302d4b68319bbcaf8710bea249ad540690ac2f4f857ecc3",
    },
];

pub fn get(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name || f.name.split('.').next() == Some(name))
        .ok_or_else(|| Error::Precondition(format!("no bundled fixture named {name:?}")))
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Fixture {
    pub fn checksum_ok(&self) -> bool {
        sha256_hex(self.text) == self.sha256
    }

    pub fn group(&self) -> Result<GroupSpec> {
        GroupSpec::parse(self.text)
    }
}

/// Parses a bundled group file.
pub fn group(name: &str) -> Result<GroupSpec> {
    get(name)?.group()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksums_match() {
        for f in FIXTURES {
            assert!(f.checksum_ok(), "{} was edited without updating its checksum", f.name);
        }
    }

    #[test]
    fn group_files_round_trip() {
        for f in FIXTURES.iter().filter(|f| f.name.ends_with(".grp")) {
            let spec = f.group().unwrap();
            assert_eq!(GroupSpec::parse(&spec.to_text()).unwrap(), spec, "{}", f.name);
        }
    }
}
