//! Seeded samplers for statistical cultures.
//!
//! Every sampler is a pure function of its [`CultureSpec`]; the seed is
//! passed through splitmix64 before seeding a ChaCha8 stream. Batches use
//! `seed + index` for element `index`, so element 0 equals [`sample`].

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::election::Election;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Line,
    Plane,
    Cube,
    Circle,
}

impl Space {
    fn dim(self) -> usize {
        match self {
            Space::Line => 1,
            Space::Plane | Space::Circle => 2,
            Space::Cube => 3,
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Space::Line),
            "2" => Ok(Space::Plane),
            "3" => Ok(Space::Cube),
            "circle" => Ok(Space::Circle),
            other => Err(Error::InvalidSpec(format!(
                "euclidean dim must be 1, 2, 3 or circle, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Culture {
    Impartial,
    /// Pólya–Eggenberger urn with contagion `alpha >= 0`.
    Urn {
        alpha: f64,
    },
    /// Mallows around the identity order. With `normalized`, `phi` is the
    /// norm-phi parameter: the expected swap distance to the center is
    /// `phi * m(m-1)/4`.
    Mallows {
        phi: f64,
        normalized: bool,
    },
    SpConitzer,
    SpWalsh,
    Spoc,
    SingleCrossing,
    Euclidean(Space),
    GsBalanced,
    GsCaterpillar,
    CompassId,
    CompassAn,
}

impl Culture {
    pub const NAMES: [&'static str; 12] = [
        "impartial",
        "urn",
        "mallows",
        "sp_conitzer",
        "sp_walsh",
        "spoc",
        "single_crossing",
        "euclidean",
        "gs_balanced",
        "gs_caterpillar",
        "compass_id",
        "compass_an",
    ];

    /// Builds a culture from its name and `key=value` parameters.
    ///
    /// Parameters: `urn` takes `alpha` (default 0.1); `mallows` takes `phi`
    /// (default 0.5) and `normalized` (default true); `euclidean` takes
    /// `dim` (default 2).
    pub fn from_name(name: &str, params: &[(String, String)]) -> Result<Self> {
        let get = |key: &str| {
            params
                .iter()
                .rev()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
        };
        let allowed: &[&str] = match name {
            "urn" => &["alpha"],
            "mallows" => &["phi", "normalized"],
            "euclidean" => &["dim"],
            _ => &[],
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidSpec(format!(
                "culture `{name}` has no parameter `{k}`"
            )));
        }
        let real = |key: &str, default: f64| -> Result<f64> {
            match get(key) {
                None => Ok(default),
                Some(v) => v.parse().map_err(|_| {
                    Error::InvalidSpec(format!("`{key}` must be a number, got `{v}`"))
                }),
            }
        };
        let culture = match name {
            "impartial" => Culture::Impartial,
            "urn" => Culture::Urn {
                alpha: real("alpha", 0.1)?,
            },
            "mallows" => Culture::Mallows {
                phi: real("phi", 0.5)?,
                normalized: match get("normalized") {
                    None | Some("true") | Some("1") => true,
                    Some("false") | Some("0") => false,
                    Some(v) => {
                        return Err(Error::InvalidSpec(format!(
                            "`normalized` must be a boolean, got `{v}`"
                        )))
                    }
                },
            },
            "sp_conitzer" => Culture::SpConitzer,
            "sp_walsh" => Culture::SpWalsh,
            "spoc" => Culture::Spoc,
            "single_crossing" => Culture::SingleCrossing,
            "euclidean" => Culture::Euclidean(get("dim").unwrap_or("2").parse()?),
            "gs_balanced" => Culture::GsBalanced,
            "gs_caterpillar" => Culture::GsCaterpillar,
            "compass_id" => Culture::CompassId,
            "compass_an" => Culture::CompassAn,
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown culture `{other}` (expected one of {})",
                    Self::NAMES.join(", ")
                )))
            }
        };
        Ok(culture)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Culture::Impartial => "impartial",
            Culture::Urn { .. } => "urn",
            Culture::Mallows { .. } => "mallows",
            Culture::SpConitzer => "sp_conitzer",
            Culture::SpWalsh => "sp_walsh",
            Culture::Spoc => "spoc",
            Culture::SingleCrossing => "single_crossing",
            Culture::Euclidean(_) => "euclidean",
            Culture::GsBalanced => "gs_balanced",
            Culture::GsCaterpillar => "gs_caterpillar",
            Culture::CompassId => "compass_id",
            Culture::CompassAn => "compass_an",
        }
    }
}

impl fmt::Display for Culture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Culture::Urn { alpha } => write!(f, "urn(alpha={alpha})"),
            Culture::Mallows { phi, normalized } => {
                write!(f, "mallows(phi={phi}, normalized={normalized})")
            }
            Culture::Euclidean(space) => write!(f, "euclidean({space:?})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CultureSpec {
    pub culture: Culture,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
}

impl CultureSpec {
    pub fn new(culture: Culture, m: usize, n: usize, seed: u64) -> Self {
        Self {
            culture,
            m,
            n,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.m == 0 || self.n == 0 {
            return bad(format!("need m, n >= 1, got m={} n={}", self.m, self.n));
        }
        match self.culture {
            Culture::Urn { alpha } if !(alpha >= 0.0 && alpha.is_finite()) => bad(format!(
                "urn alpha must be a finite nonnegative number, got {alpha}"
            )),
            Culture::Mallows { phi, .. } if !(0.0..=1.0).contains(&phi) => {
                bad(format!("mallows phi must lie in [0, 1], got {phi}"))
            }
            Culture::CompassAn if self.n % 2 == 1 => {
                bad(format!("compass_an needs an even n, got {}", self.n))
            }
            _ => Ok(()),
        }
    }

    fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

/// Candidate and voter positions behind a Euclidean election.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanPoints {
    pub candidates: Vec<Vec<f64>>,
    pub voters: Vec<Vec<f64>>,
}

/// The splitmix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed))
}

/// Draws one election.
pub fn sample(spec: &CultureSpec) -> Result<Election> {
    spec.validate()?;
    let (m, n) = (spec.m, spec.n);
    let mut rng = rng_for(spec.seed);
    let rankings = match spec.culture {
        Culture::Impartial => (0..n)
            .map(|voter| {
                // one stream per voter so votes do not depend on each other
                let mut stream = rng.clone();
                stream.set_stream(voter as u64);
                uniform_vote(m, &mut stream)
            })
            .collect(),
        Culture::Urn { alpha } => urn(m, n, alpha, &mut rng),
        Culture::Mallows { phi, normalized } => {
            let phi = if normalized {
                phi_from_norm(m, phi)
            } else {
                phi
            };
            (0..n).map(|_| mallows_vote(m, phi, &mut rng)).collect()
        }
        Culture::SpConitzer => (0..n).map(|_| conitzer_vote(m, &mut rng)).collect(),
        Culture::SpWalsh => (0..n).map(|_| walsh_vote(m, &mut rng)).collect(),
        Culture::Spoc => (0..n).map(|_| spoc_vote(m, &mut rng)).collect(),
        Culture::SingleCrossing => single_crossing(m, n, &mut rng),
        Culture::Euclidean(space) => euclidean(m, n, space, &mut rng).0,
        Culture::GsBalanced => (0..n).map(|_| gs_vote(0, m, true, &mut rng)).collect(),
        Culture::GsCaterpillar => (0..n).map(|_| gs_vote(0, m, false, &mut rng)).collect(),
        Culture::CompassId => vec![(0..m).collect(); n],
        Culture::CompassAn => {
            let forward: Vec<usize> = (0..m).collect();
            let backward: Vec<usize> = (0..m).rev().collect();
            (0..n)
                .map(|i| {
                    if i < n / 2 {
                        forward.clone()
                    } else {
                        backward.clone()
                    }
                })
                .collect()
        }
    };
    Election::from_rankings(rankings)
}

/// Like [`sample`] for a Euclidean culture, also returning the points.
pub fn sample_euclidean(spec: &CultureSpec) -> Result<(Election, EuclideanPoints)> {
    spec.validate()?;
    let Culture::Euclidean(space) = spec.culture else {
        return Err(Error::InvalidSpec(format!(
            "{} is not a euclidean culture",
            spec.culture
        )));
    };
    let mut rng = rng_for(spec.seed);
    let (rankings, points) = euclidean(spec.m, spec.n, space, &mut rng);
    Ok((Election::from_rankings(rankings)?, points))
}

/// `count` elections; element `i` is sampled with seed `spec.seed + i`.
pub fn sample_batch(spec: &CultureSpec, count: usize) -> Result<Vec<Election>> {
    spec.validate()?;
    (0..count)
        .map(|i| sample(&spec.with_seed(spec.seed.wrapping_add(i as u64))))
        .collect()
}

fn uniform_vote(m: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut vote: Vec<usize> = (0..m).collect();
    vote.shuffle(rng);
    vote
}

fn urn(m: usize, n: usize, alpha: f64, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let mut votes: Vec<Vec<usize>> = Vec::with_capacity(n);
    for k in 0..n {
        let fresh = 1.0 / (1.0 + k as f64 * alpha);
        if k == 0 || rng.gen::<f64>() < fresh {
            votes.push(uniform_vote(m, rng));
        } else {
            let copy = votes[rng.gen_range(0..k)].clone();
            votes.push(copy);
        }
    }
    votes
}

/// Repeated insertion: candidate `i` (0-based) lands `d` places above the
/// bottom of the partial vote with probability proportional to `phi^d`.
fn mallows_vote(m: usize, phi: f64, rng: &mut impl Rng) -> Vec<usize> {
    let mut vote = Vec::with_capacity(m);
    for i in 0..m {
        let weights: Vec<f64> = (0..=i).map(|d| phi.powi(d as i32)).collect();
        let total: f64 = weights.iter().sum();
        let mut x = rng.gen::<f64>() * total;
        let mut d = 0;
        while d < i && x >= weights[d] {
            x -= weights[d];
            d += 1;
        }
        vote.insert(i - d, i);
    }
    vote
}

/// Expected swap distance from the center under Mallows with dispersion `phi`.
pub fn mallows_expected_swaps(m: usize, phi: f64) -> f64 {
    (1..m)
        .map(|i| {
            let (mut num, mut den) = (0.0, 0.0);
            for d in 0..=i {
                let w = phi.powi(d as i32);
                num += d as f64 * w;
                den += w;
            }
            num / den
        })
        .sum()
}

/// The dispersion whose expected swap distance is `norm * m(m-1)/4`.
pub fn phi_from_norm(m: usize, norm: f64) -> f64 {
    let target = norm * (m * m.saturating_sub(1)) as f64 / 4.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if mallows_expected_swaps(m, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn conitzer_vote(m: usize, rng: &mut impl Rng) -> Vec<usize> {
    let peak = rng.gen_range(0..m);
    let mut vote = vec![peak];
    let (mut left, mut right) = (peak, peak);
    while vote.len() < m {
        let go_left = if left == 0 {
            false
        } else if right == m - 1 {
            true
        } else {
            rng.gen_bool(0.5)
        };
        if go_left {
            left -= 1;
            vote.push(left);
        } else {
            right += 1;
            vote.push(right);
        }
    }
    vote
}

fn walsh_vote(m: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut vote = Vec::with_capacity(m);
    let (mut lo, mut hi) = (0, m - 1);
    while lo < hi {
        if rng.gen_bool(0.5) {
            vote.push(lo);
            lo += 1;
        } else {
            vote.push(hi);
            hi -= 1;
        }
    }
    vote.push(lo);
    vote.reverse();
    vote
}

fn spoc_vote(m: usize, rng: &mut impl Rng) -> Vec<usize> {
    let peak = rng.gen_range(0..m);
    let mut vote = vec![peak];
    // arc covered so far: `back` steps counter-clockwise, `ahead` clockwise
    let (mut back, mut ahead) = (0, 0);
    while vote.len() < m {
        if rng.gen_bool(0.5) {
            ahead += 1;
            vote.push((peak + ahead) % m);
        } else {
            back += 1;
            vote.push((peak + m - back) % m);
        }
    }
    vote
}

fn single_crossing(m: usize, n: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let steps = m * (m - 1) / 2;
    let mut positions: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=steps)).collect();
    positions.sort_unstable();
    let mut current: Vec<usize> = (0..m).collect();
    let mut done = 0;
    let mut votes = Vec::with_capacity(n);
    for pos in positions {
        while done < pos {
            // adjacent pairs still in axis order can be swapped
            let open: Vec<usize> = (0..m - 1)
                .filter(|&k| current[k] < current[k + 1])
                .collect();
            let k = *open
                .choose(rng)
                .expect("chain not yet at the reverse order");
            current.swap(k, k + 1);
            done += 1;
        }
        votes.push(current.clone());
    }
    votes
}

fn random_point(space: Space, rng: &mut impl Rng) -> Vec<f64> {
    match space {
        Space::Circle => {
            let t = rng.gen::<f64>() * std::f64::consts::TAU;
            vec![t.cos(), t.sin()]
        }
        _ => (0..space.dim()).map(|_| rng.gen::<f64>()).collect(),
    }
}

/// Ranks candidates by ascending squared distance, ties by index.
pub fn vote_from_points(voter: &[f64], candidates: &[Vec<f64>]) -> Vec<usize> {
    let dist = |c: &Vec<f64>| -> f64 { c.iter().zip(voter).map(|(a, b)| (a - b) * (a - b)).sum() };
    let d: Vec<f64> = candidates.iter().map(dist).collect();
    let mut vote: Vec<usize> = (0..candidates.len()).collect();
    vote.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
    vote
}

fn euclidean(
    m: usize,
    n: usize,
    space: Space,
    rng: &mut impl Rng,
) -> (Vec<Vec<usize>>, EuclideanPoints) {
    let candidates: Vec<Vec<f64>> = (0..m).map(|_| random_point(space, rng)).collect();
    let voters: Vec<Vec<f64>> = (0..n).map(|_| random_point(space, rng)).collect();
    let votes = voters
        .iter()
        .map(|v| vote_from_points(v, &candidates))
        .collect();
    (votes, EuclideanPoints { candidates, voters })
}

/// Leaves `lo..hi` of a balanced (or caterpillar) tree, each internal node
/// flipped with probability 1/2. When `m` is not a power of two the
/// balanced tree splits each range at its midpoint, lower half first.
fn gs_vote(lo: usize, hi: usize, balanced: bool, rng: &mut impl Rng) -> Vec<usize> {
    let mut out = Vec::with_capacity(hi - lo);
    gs_walk(lo, hi, balanced, rng, &mut out);
    out
}

fn gs_walk(lo: usize, hi: usize, balanced: bool, rng: &mut impl Rng, out: &mut Vec<usize>) {
    if hi - lo == 1 {
        out.push(lo);
        return;
    }
    let mid = if balanced { lo + (hi - lo) / 2 } else { lo + 1 };
    if rng.gen_bool(0.5) {
        gs_walk(mid, hi, balanced, rng, out);
        gs_walk(lo, mid, balanced, rng, out);
    } else {
        gs_walk(lo, mid, balanced, rng, out);
        gs_walk(mid, hi, balanced, rng, out);
    }
}

/// Leaf sets of the internal nodes of the tree used by [`Culture::GsBalanced`]
/// or [`Culture::GsCaterpillar`]; each is a clone set of every sampled vote.
pub fn gs_internal_nodes(m: usize, balanced: bool) -> Vec<Vec<usize>> {
    fn walk(lo: usize, hi: usize, balanced: bool, out: &mut Vec<Vec<usize>>) {
        if hi - lo <= 1 {
            return;
        }
        out.push((lo..hi).collect());
        let mid = if balanced { lo + (hi - lo) / 2 } else { lo + 1 };
        walk(lo, mid, balanced, out);
        walk(mid, hi, balanced, out);
    }
    let mut out = Vec::new();
    walk(0, m, balanced, &mut out);
    out
}

/// True iff `vote` is single-peaked on the axis `0 < 1 < ... < m-1`:
/// every prefix of the vote is an interval of the axis.
pub fn is_single_peaked(vote: &[usize]) -> bool {
    let Some(&first) = vote.first() else {
        return true;
    };
    let (mut lo, mut hi) = (first, first);
    for &c in &vote[1..] {
        if lo > 0 && c == lo - 1 {
            lo = c;
        } else if c == hi + 1 {
            hi = c;
        } else {
            return false;
        }
    }
    true
}
