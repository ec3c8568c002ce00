//! The `.ted` file format: a JSON description of a two-edge drawing.
//!
//! ```json
//! {
//!   "n": 4,
//!   "order_e": [1, 4, 3, 2],
//!   "signs": [-1, 1, -1, 1],
//!   "points": "auto-lens",
//!   "outer": null
//! }
//! ```
//!
//! `order_e` lists the 1-based crossing indices in order along `e`; `signs`
//! is indexed by crossing; `points` is either the string `"auto-lens"` (one
//! marker per lens) or a list of face keys; `outer` is an optional face key,
//! required for deadlock drawings. Serialization is canonical: parsing a
//! serialized drawing reproduces it bit-exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{DrawingError, PointSpec, TwoEdgeDrawing};
use crate::map::FaceId;

#[derive(Debug, Error)]
pub enum TedError {
    #[error("malformed .ted file: {0}")]
    Format(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TedPoints {
    Mode(String),
    Faces(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TedFile {
    pub n: usize,
    pub order_e: Vec<u32>,
    pub signs: Vec<i8>,
    pub points: TedPoints,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<u32>,
}

impl TedFile {
    pub fn from_drawing(d: &TwoEdgeDrawing) -> TedFile {
        TedFile {
            n: d.n(),
            order_e: d.order_e().to_vec(),
            signs: d.signs().to_vec(),
            points: TedPoints::Faces(d.points().iter().map(|f| f.0).collect()),
            outer: d.outer().ok().map(|f| f.0),
        }
    }

    pub fn to_drawing(&self) -> Result<TwoEdgeDrawing, TedError> {
        if self.n != self.order_e.len() {
            return Err(TedError::Format(format!(
                "n = {} but order_e has {} entries",
                self.n,
                self.order_e.len()
            )));
        }
        let points = match &self.points {
            TedPoints::Mode(m) if m == "auto-lens" => PointSpec::AutoLens,
            TedPoints::Mode(m) => {
                return Err(TedError::Format(format!("unknown points mode {m:?}")))
            }
            TedPoints::Faces(keys) => PointSpec::Faces(keys.iter().map(|&k| FaceId(k)).collect()),
        };
        Ok(TwoEdgeDrawing::validate(
            &self.order_e,
            &self.signs,
            points,
            self.outer.map(FaceId),
        )?)
    }
}

pub fn parse(text: &str) -> Result<TwoEdgeDrawing, TedError> {
    let file: TedFile = serde_json::from_str(text).map_err(|e| TedError::Format(e.to_string()))?;
    file.to_drawing()
}

pub fn serialize(d: &TwoEdgeDrawing) -> String {
    serde_json::to_string(&TedFile::from_drawing(d)).expect("ted files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use proptest::prelude::*;

    #[test]
    fn parse_serialize_identity_on_constructions() {
        let fixtures: Vec<TwoEdgeDrawing> = vec![
            construct::doubling(0).unwrap(),
            construct::doubling(2).unwrap(),
            construct::enhanced_doubling(2).unwrap(),
            construct::twist(3).unwrap(),
            construct::spiral_example().unwrap(),
            construct::fixtures::deadlock_loop(),
        ];
        for d in fixtures {
            let text = serialize(&d);
            let parsed = parse(&text).unwrap();
            assert_eq!(serialize(&parsed), text);
            assert_eq!(parsed.order_e(), d.order_e());
            assert_eq!(parsed.signs(), d.signs());
            assert_eq!(parsed.points(), d.points());
        }
    }

    #[test]
    fn auto_lens_mode_places_markers() {
        let text = r#"{"n":4,"order_e":[1,4,3,2],"signs":[-1,1,-1,1],"points":"auto-lens"}"#;
        let d = parse(text).unwrap();
        assert_eq!(d.points().len(), 2);
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(parse("{").is_err());
        assert!(parse(r#"{"n":2,"order_e":[1],"signs":[1,1],"points":[]}"#).is_err());
        assert!(parse(r#"{"n":1,"order_e":[1],"signs":[1],"points":"everywhere"}"#).is_err());
        // Deadlock drawing without an outer face.
        assert!(matches!(
            parse(r#"{"n":2,"order_e":[1,2],"signs":[-1,-1],"points":[]}"#),
            Err(TedError::Drawing(DrawingError::NoOuterFace))
        ));
    }

    proptest! {
        // Round-trip invariance over random valid encodings.
        #[test]
        fn roundtrip_random_encodings(perm in proptest::sample::select(vec![
            vec![1u32], vec![1, 2], vec![2, 1], vec![1, 2, 3], vec![2, 1, 3],
            vec![1, 3, 2], vec![1, 4, 3, 2], vec![2, 4, 1, 3], vec![1, 2, 4, 3],
        ]), mask in 0u32..16) {
            let n = perm.len();
            let signs: Vec<i8> =
                (0..n).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
            if let Ok(d) = TwoEdgeDrawing::validate_lenient(
                &perm, &signs, PointSpec::Faces(Vec::new()), None,
            ) {
                if !d.is_deadlock() {
                    let text = serialize(&d);
                    let parsed = parse(&text).unwrap();
                    prop_assert_eq!(serialize(&parsed), text);
                }
            }
        }
    }
}
