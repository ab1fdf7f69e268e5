//! Size caps and run configuration.

/// Environment variable that overrides [`Caps::downset_cap`].
pub const MAXCAP_ENV: &str = "LOCALEFORGE_MAXCAP";

/// Size caps governing the exhaustive machinery.
///
/// Caps are configuration, not constants: frame coproducts grow as
/// downsets of product posets, so callers building large coproducts may
/// need to raise `downset_cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of downsets a single frame carrier may have.
    pub downset_cap: usize,
    /// Maximum frame size for the brute-force nucleus enumeration.
    pub nuclei_cap: usize,
    /// Maximum codomain size for exhaustive frame-hom enumeration when
    /// certifying uniqueness of mediating homomorphisms.
    pub hom_exhaustive_cap: usize,
    /// Frames up to this size precompute meet/join/implication tables;
    /// larger carriers fall back to bitset arithmetic per query.
    pub table_cap: usize,
    /// `2^n` limit under which compactness is checked by literally
    /// enumerating directed subsets.
    pub compact_literal_cap: usize,
    /// Maximum object size for on-demand universal-property certificates
    /// in the finite-set pretopos.
    pub cone_search_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            downset_cap: 1 << 20,
            nuclei_cap: 7,
            hom_exhaustive_cap: 5,
            table_cap: 512,
            compact_literal_cap: 1 << 16,
            cone_search_cap: 6,
        }
    }
}

impl Caps {
    /// Default caps with `downset_cap` taken from the `LOCALEFORGE_MAXCAP`
    /// environment variable when set and parseable.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var(MAXCAP_ENV) {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n > 0 {
                    caps.downset_cap = n;
                }
            }
        }
        caps
    }
}

/// Output format selector for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Dot,
}

/// Full run configuration: caps, output format, and the seed used by
/// randomized sweeps. A fixed seed makes report output byte-identical
/// across runs.
#[derive(Debug, Clone, Default)]
pub struct Config {
    pub caps: Caps,
    pub format: OutputFormat,
    pub seed: u64,
}
