//! Named instances used by the command line, the acceptance suite and the demo page.

use serde::Serialize;

use crate::error::Result;
use crate::semigroup::{from_spec, StarSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GalleryEntry {
    pub spec: &'static str,
    pub description: &'static str,
}

impl GalleryEntry {
    pub fn build(&self) -> Result<StarSemigroup> {
        from_spec(self.spec)
    }
}

const ENTRIES: &[GalleryEntry] = &[
    GalleryEntry { spec: "zn:1", description: "trivial semigroup" },
    GalleryEntry { spec: "zn:2", description: "Z_2 under multiplication" },
    GalleryEntry { spec: "zn:4", description: "Z_4 under multiplication, not proper (2·2 = 0)" },
    GalleryEntry { spec: "zn:6", description: "Z_6 under multiplication, four *-annihilators" },
    GalleryEntry { spec: "zn:10", description: "Z_10 under multiplication" },
    GalleryEntry { spec: "zn:12", description: "Z_12 under multiplication, not proper" },
    GalleryEntry { spec: "zn:30", description: "Z_30 under multiplication, Boolean lattice of 8" },
    GalleryEntry { spec: "znring:6", description: "Z_6 as a *-ring" },
    GalleryEntry { spec: "znring:30", description: "Z_30 as a *-ring" },
    GalleryEntry { spec: "bool:2", description: "2×2 Boolean matrices with transpose" },
    GalleryEntry { spec: "bool:3", description: "3×3 Boolean matrices with transpose (512 elements)" },
    GalleryEntry { spec: "matring:2,2", description: "M_2(Z_2) with transpose, not proper" },
    GalleryEntry { spec: "matring:2,3", description: "M_2(Z_3) with transpose, a proper *-ring" },
    GalleryEntry { spec: "brandt:2", description: "Brandt semigroup B_2 of 2×2 matrix units" },
    GalleryEntry { spec: "brandt:3", description: "Brandt semigroup B_3" },
    GalleryEntry { spec: "unit:brandt:2", description: "B_2 with an identity adjoined" },
    GalleryEntry { spec: "semilattice:3", description: "subsets of a 3-set under intersection" },
    GalleryEntry { spec: "zn:2*brandt:2", description: "Z_2 × B_2" },
];

pub fn gallery() -> &'static [GalleryEntry] {
    ENTRIES
}

pub fn entry(spec: &str) -> Option<&'static GalleryEntry> {
    ENTRIES.iter().find(|e| e.spec == spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds() {
        for e in gallery() {
            let s = e.build().unwrap();
            assert!(s.len() <= 512, "{}", e.spec);
        }
        assert_eq!(entry("zn:6").unwrap().build().unwrap().len(), 6);
        assert!(entry("zn:7").is_none());
    }
}
