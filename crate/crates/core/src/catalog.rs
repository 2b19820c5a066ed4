//! Known classifications of free involutions on small 3-manifolds.
//!
//! Oriented quotients carry a surgery presentation and the class of the
//! cover, so the classifier can reproduce the stored index. Nonorientable
//! quotients (K³, S¹×RP²) have no surgery presentation and are data only.

use serde::{Deserialize, Serialize};

use crate::borsuk::{classify_class, Index};
use crate::error::Result;
use crate::homology::CoverClass;
use crate::linalg::IntMatrix;
use crate::surgery::{lens_presentation, linking_matrix, SurgeryPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub cover_manifold: String,
    pub quotient_manifold: String,
    pub involution_note: String,
    pub index: Index,
    pub source: String,
    pub computable_by_surgery: bool,
    /// Linking matrix of the quotient, when it has a surgery presentation.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_matrix"
    )]
    pub surgery_presentation: Option<IntMatrix>,
    /// Class in `H¹(quotient; Z/2)` of the double cover.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_class: Option<Vec<u8>>,
}

mod opt_matrix {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::IntMatrix;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "crate::serde_int::matrix")] IntMatrix);

    pub fn serialize<S: Serializer>(m: &Option<IntMatrix>, s: S) -> Result<S::Ok, S::Error> {
        m.clone().map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<IntMatrix>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

impl CatalogEntry {
    /// Runs the classifier on the attached presentation; `None` for
    /// entries without one.
    pub fn recompute(&self) -> Option<Result<Index>> {
        let b = self.surgery_presentation.as_ref()?;
        let bits = self.cover_class.as_ref()?;
        Some(CoverClass::from_bits(b, bits).and_then(|x| Ok(classify_class(b, &x)?.index)))
    }
}

fn entry(
    cover: &str,
    quotient: &str,
    note: &str,
    index: Index,
    source: &str,
    presentation: Option<(IntMatrix, Vec<u8>)>,
) -> CatalogEntry {
    let (surgery_presentation, cover_class) = match presentation {
        Some((b, x)) => (Some(b), Some(x)),
        None => (None, None),
    };
    CatalogEntry {
        cover_manifold: cover.into(),
        quotient_manifold: quotient.into(),
        involution_note: note.into(),
        index,
        source: source.into(),
        computable_by_surgery: surgery_presentation.is_some(),
        surgery_presentation,
        cover_class,
    }
}

fn single(a: i64) -> IntMatrix {
    IntMatrix::diagonal(&[a])
}

/// Every fixed entry of the catalog.
pub fn entries() -> Vec<CatalogEntry> {
    vec![
        entry(
            "S3",
            "RP3 = L(2,1)",
            "antipodal map",
            Index::Three,
            "classical Borsuk-Ulam theorem for S3: x^3 != 0 in H^*(RP3; Z/2)",
            Some((single(-2), vec![1])),
        ),
        entry(
            "RP3",
            "L(4,1)",
            "involution induced by multiplication by i",
            Index::Two,
            "Stolz: level of RP3 is 3; L(4,1) is surgery on a (-4)-framed unknot, beta(x) = i*(2) != 0 in Z/4, x^3 = 0",
            Some((single(-4), vec![1])),
        ),
        entry(
            "S1xS2",
            "S1xS2",
            "rotation by pi on the S1 factor",
            Index::One,
            "free involutions of S1xS2, case N = S1xS2: H^2(N; Z) = Z so the Bockstein vanishes",
            Some((single(0), vec![1])),
        ),
        entry(
            "S1xS2",
            "K3",
            "orbit space is the 3-dimensional Klein bottle",
            Index::One,
            "free involutions of S1xS2, case N = K3: H^2(K3; Z) = 0 so the Bockstein vanishes",
            None,
        ),
        entry(
            "S1xS2",
            "S1xRP2",
            "identity on S1 times antipodal map on S2",
            Index::Two,
            "free involutions of S1xS2, case N = S1xRP2: beta_2(x) = 1 x v1^2 != 0 and x^3 = 1 x v1^3 = 0",
            None,
        ),
        entry(
            "S1xS2",
            "RP3#RP3",
            "cover with classifying class (1,1)",
            Index::Two,
            "free involutions of S1xS2, case N = RP3#RP3: B = diag(2,2), (1,1) not in Im B and X^T B X / 2 = 2",
            Some((IntMatrix::diagonal(&[2, 2]), vec![1, 1])),
        ),
        entry(
            "K3",
            "S1xRP2",
            "[t, x] -> [t, -x] on K3 = [0,1]xS2/(1,x)~(0,-x)",
            Index::Three,
            "3-dimensional Klein bottle: x = u1x1 + 1xv1, x^3 = u1 x v1^2 != 0",
            None,
        ),
    ]
}

/// Index rule for the connected double cover L(p/2, q) → L(p, q).
/// `None` for odd p, where no connected double cover exists.
pub fn lens_family_index(p: i64) -> Option<Index> {
    if p < 2 || p % 2 != 0 {
        return None;
    }
    Some(if p % 4 == 2 { Index::Three } else { Index::Two })
}

/// Entry for the lens family member L(p, q); `None` when p is odd or the
/// parameters are invalid.
pub fn lens_entry(p: i64, q: i64) -> Option<CatalogEntry> {
    let index = lens_family_index(p)?;
    let pres: SurgeryPresentation = lens_presentation(p, q).ok()?;
    let b = linking_matrix(&pres);
    // The class is the unique nonzero kernel vector of the chain mod 2.
    let x = crate::homology::cover_classes(&b, 1).ok()?.classes.into_iter().next()?;
    Some(entry(
        &format!("L({},{})", p / 2, q),
        &format!("L({p},{q})"),
        "deck transformation of the double cover L(p/2,q) -> L(p,q)",
        index,
        "lens spaces with p even: beta(x) != 0 always; index 3 iff p = 2 mod 4",
        Some((b, x.bits().to_bits())),
    ))
}

/// Canonical spelling of a manifold name for matching.
pub fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '×' | '*' => 'x',
            '³' => '3',
            '²' => '2',
            '¹' => '1',
            c => c.to_ascii_lowercase(),
        })
        .collect()
}

fn lens_params(name: &str) -> Option<(i64, i64)> {
    let inner = name.strip_prefix("l(")?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.parse().ok()?, q.parse().ok()?))
}

/// Entries whose cover manifold matches `name`; when none does, entries whose
/// quotient matches. Names of the form `L(p,q)` resolve through the lens rule.
pub fn lookup(name: &str) -> Vec<CatalogEntry> {
    let key = normalize_name(name);
    if let Some((p, q)) = lens_params(&key) {
        return lens_entry(p, q).into_iter().collect();
    }
    let all = entries();
    let by_cover: Vec<_> = all
        .iter()
        .filter(|e| normalize_name(&e.cover_manifold) == key)
        .cloned()
        .collect();
    if !by_cover.is_empty() {
        return by_cover;
    }
    all.into_iter()
        .filter(|e| {
            e.quotient_manifold
                .split('=')
                .any(|part| normalize_name(part) == key)
        })
        .collect()
}
