use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{normal_form, preserves_proper_hypersurface, IsometryError, RationalOrthoAffine};
use crate::par;
use crate::rational::{is_integral, Q};

/// Grid points examined before a witness search gives up.
pub const WITNESS_SEARCH_LIMIT: usize = 4_000_000;

/// The unit cube `offset + Σ t_k e_{dirs[k]}`, `t ∈ [0,1]^d`. Directions are
/// 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSpec {
    pub dirs: Vec<usize>,
    pub offset: Vec<BigInt>,
}

impl CubeSpec {
    pub fn new(dirs: Vec<usize>, offset: Vec<i64>) -> Self {
        CubeSpec { dirs, offset: offset.into_iter().map(BigInt::from).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn point(&self, t: &[Q]) -> Vec<Q> {
        let mut p: Vec<Q> = self.offset.iter().map(|x| Q::from_integer(x.clone())).collect();
        for (k, &d) in self.dirs.iter().enumerate() {
            p[d] += &t[k];
        }
        p
    }

    fn check(&self, n: usize) -> Result<(), IsometryError> {
        if self.offset.len() != n {
            return Err(IsometryError::BadCube(format!("offset has length {}, expected {n}", self.offset.len())));
        }
        let mut seen = vec![false; n];
        for &d in &self.dirs {
            if d >= n || std::mem::replace(&mut seen[d], true) {
                return Err(IsometryError::BadCube(format!("direction {} repeated or out of range", d + 1)));
            }
        }
        if self.dirs.is_empty() || self.dirs.len() >= n {
            return Err(IsometryError::CubeDimension { d: self.dirs.len(), max: n.saturating_sub(1) });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralTransverse {
    /// Point of the open cube whose image has more non-integral coordinates
    /// than the cube has dimensions.
    Witness(Vec<Q>),
    /// The image of the cube is the cube moved by this integral vector.
    IntegralTranslate(Vec<BigInt>),
}

/// Whether `T` maps some point of the open cube into the interior of an
/// `n`-cube. The open cube is connected, so this fails only when some image
/// coordinate is constant and integral along the whole cube.
pub fn image_meets_open_top_cube(t: &RationalOrthoAffine, cube: &CubeSpec) -> bool {
    let base = t.apply(&cube.point(&vec![Q::from_integer(BigInt::from(0)); cube.dim()]));
    (0..t.dim()).all(|j| {
        let constant = cube.dirs.iter().all(|&d| t.matrix()[(j, d)].is_zero());
        !(constant && is_integral(&base[j]))
    })
}

fn non_integral(p: &[Q]) -> usize {
    p.iter().filter(|x| !is_integral(x)).count()
}

fn search(t: &RationalOrthoAffine, cube: &CubeSpec) -> Result<Vec<Q>, IsometryError> {
    let d = cube.dim();
    let good = |tt: &[Q]| non_integral(&t.apply(&cube.point(tt))) > d;
    let centre = vec![Q::new(BigInt::one(), BigInt::from(2)); d];
    if good(&centre) {
        return Ok(cube.point(&centre));
    }
    // t_k = m_k / q with q = 2·den + 1, for m_k in 1..q
    let qq: BigInt = t.denominator() * 2 + 1;
    let side = qq.to_usize().map(|s| s - 1).unwrap_or(usize::MAX);
    let total = side
        .checked_pow(d as u32)
        .unwrap_or(usize::MAX)
        .min(WITNESS_SEARCH_LIMIT);
    let coords = |mut idx: usize| -> Vec<Q> {
        (0..d)
            .map(|_| {
                let m = idx % side + 1;
                idx /= side;
                Q::new(BigInt::from(m), qq.clone())
            })
            .collect()
    };
    match par::find_first(total, |i| good(&coords(i))) {
        Some(i) => Ok(cube.point(&coords(i))),
        None => Err(IsometryError::SearchExhausted { tried: total + 1 }),
    }
}

/// A point of the open cube whose image lies in the interior of a cube of
/// higher dimension. Requires that `t` preserve no proper hypersurface.
pub fn transverse_witness(t: &RationalOrthoAffine, cube: &CubeSpec) -> Result<Vec<Q>, IsometryError> {
    cube.check(t.dim())?;
    if let Some(split) = preserves_proper_hypersurface(t) {
        return Err(IsometryError::PreservesHypersurface(split.hypersurface.free));
    }
    search(t, cube)
}

/// Either a witness point, or the integral translation carrying the cube
/// when it lies in `L × p` (L the LAMBDA directions) with `T(p)` integral.
/// The LAMBDA part must already be diagonal in the given coordinates.
pub fn general_transverse(t: &RationalOrthoAffine, cube: &CubeSpec) -> Result<GeneralTransverse, IsometryError> {
    cube.check(t.dim())?;
    let nf = normal_form(t);
    let lambda = nf.lambda_coordinates();
    if nf.post.iter().enumerate().any(|(j, &r)| j != r) {
        return Err(IsometryError::NotNormalForm(
            "cubical coordinates are permuted; conjugate so the LAMBDA part is diagonal".into(),
        ));
    }
    let base = cube.point(&vec![Q::from_integer(BigInt::from(0)); cube.dim()]);
    let image = t.apply(&base);
    if cube.dirs.iter().all(|d| lambda.contains(d)) && image.iter().all(is_integral) {
        let far = t.apply(&cube.point(&vec![Q::one(); cube.dim()]));
        let shift = image
            .iter()
            .zip(&far)
            .zip(&base)
            .map(|((a, b), o)| (a.min(b) - o).to_integer())
            .collect();
        return Ok(GeneralTransverse::IntegralTranslate(shift));
    }
    search(t, cube).map(GeneralTransverse::Witness)
}
