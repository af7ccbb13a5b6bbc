//! Fixtures shared by the benchmarks.

use wnc_core::theorems::CorpusSpec;
use wnc_core::{build_str, BuildOptions, RingTable, StructureCache};

/// Builds `text` with default options, panicking on failure.
pub fn table(text: &str) -> RingTable {
    build_str(text, &BuildOptions::default())
        .unwrap_or_else(|e| panic!("{text}: {e}"))
        .table
}

pub fn ring(text: &str) -> (RingTable, StructureCache) {
    let t = table(text);
    let s = StructureCache::new(&t);
    (t, s)
}

/// A handful of mid-sized rings covering every construction.
pub fn small_corpus() -> CorpusSpec {
    CorpusSpec::parse(
        "Z(36)\nM2(Z(2))\nT2(Z(3))\nprod(Z(4),Z(9))\nidealize(Z(6),self)\n\
         corner(M2(Z(3)),1)\nskew(prod(Z(3),Z(3)),swap(1,2),2)\n",
    )
    .expect("fixture corpus parses")
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_build() {
        assert_eq!(super::table("M2(Z(3))").order(), 81);
        assert_eq!(super::small_corpus().len(), 7);
    }
}
