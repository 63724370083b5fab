//! The plat DSL and classical invariants of the front.
//!
//! Tokens, whitespace separated and read left to right:
//!   O<i>  cusp open: two new strands appear at positions i, i+1 (1-based
//!         from the top),
//!   X<i>  crossing of the strands at positions i, i+1,
//!   C<i>  cusp close of the strands at positions i, i+1.

use super::FrontError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlatEvent {
    CuspOpen(usize),
    Cross(usize),
    CuspClose(usize),
}

impl std::fmt::Display for PlatEvent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlatEvent::CuspOpen(i) => write!(f, "O{i}"),
            PlatEvent::Cross(i) => write!(f, "X{i}"),
            PlatEvent::CuspClose(i) => write!(f, "C{i}"),
        }
    }
}

/// A validated plat-position front diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatFront {
    pub events: Vec<PlatEvent>,
}

/// Parses and validates the plat DSL. The running strand count starts at 0,
/// CuspOpen adds 2, CuspClose removes 2, and every event must reference
/// currently existing strands; the final count must be 0.
pub fn parse_plat(text: &str) -> Result<PlatFront, FrontError> {
    let mut events = Vec::new();
    let mut offset = 0;
    for raw in text.split_whitespace() {
        // Byte offset of this token in the input, for error positions.
        offset = text[offset..]
            .find(raw)
            .map(|k| offset + k)
            .unwrap_or(offset);
        let parse_err = |message: &str| FrontError::Parse {
            offset,
            token: raw.to_string(),
            message: message.to_string(),
        };
        let (kind, digits) = raw.split_at(1);
        let i: usize = digits
            .parse()
            .map_err(|_| parse_err("expected a positive strand position after the letter"))?;
        if i == 0 {
            return Err(parse_err("strand positions are 1-based"));
        }
        let event = match kind {
            "O" => PlatEvent::CuspOpen(i),
            "X" => PlatEvent::Cross(i),
            "C" => PlatEvent::CuspClose(i),
            _ => return Err(parse_err("expected O<i>, X<i> or C<i>")),
        };
        events.push(event);
        offset += raw.len();
    }
    validate(&events)?;
    Ok(PlatFront { events })
}

fn validate(events: &[PlatEvent]) -> Result<(), FrontError> {
    let mut count: usize = 0;
    let bad = |index: usize, event: &PlatEvent, message: String| FrontError::BadEvent {
        index,
        event: event.to_string(),
        message,
    };
    for (index, event) in events.iter().enumerate() {
        match *event {
            PlatEvent::CuspOpen(i) => {
                if i > count + 1 {
                    return Err(bad(
                        index,
                        event,
                        format!("cannot open at position {i} with only {count} strands"),
                    ));
                }
                count += 2;
            }
            PlatEvent::Cross(i) | PlatEvent::CuspClose(i) => {
                if i + 1 > count {
                    return Err(bad(
                        index,
                        event,
                        format!("strands {i},{} do not exist ({count} strands)", i + 1),
                    ));
                }
                if let PlatEvent::CuspClose(_) = event {
                    count -= 2;
                }
            }
        }
    }
    if count != 0 {
        return Err(FrontError::BadEvent {
            index: events.len(),
            event: "<end>".to_string(),
            message: format!("{count} strands left open"),
        });
    }
    if events.is_empty() {
        return Err(FrontError::BadEvent {
            index: 0,
            event: "<end>".to_string(),
            message: "empty front".to_string(),
        });
    }
    Ok(())
}

impl PlatFront {
    /// The front reflected across the horizontal axis: event order is kept,
    /// strand positions are reflected within the current strand count. The
    /// reflection negates the rotation number and preserves tb.
    pub fn mirrored(&self) -> PlatFront {
        let mut events = Vec::new();
        let mut count: usize = 0;
        for event in &self.events {
            match *event {
                PlatEvent::CuspOpen(i) => {
                    // The new pair occupies (i, i+1) among count + 2 strands.
                    events.push(PlatEvent::CuspOpen(count + 2 - i));
                    count += 2;
                }
                PlatEvent::Cross(i) => events.push(PlatEvent::Cross(count - i)),
                PlatEvent::CuspClose(i) => {
                    events.push(PlatEvent::CuspClose(count - i));
                    count -= 2;
                }
            }
        }
        PlatFront { events }
    }
}

/// Traced structure of the front: strand segments, crossings and cusps.
/// Shared between the classical invariants and the resolution step.
pub(super) struct FrontTrace {
    /// Per segment: (west connection, east connection), filled during the
    /// sweep. Segment 2k/2k+1 are the upper/lower branches of some cusp.
    pub segments: Vec<Segment>,
    pub crossings: Vec<CrossingRec>,
    pub left_cusps: Vec<CuspRec>,
    pub right_cusps: Vec<CuspRec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) struct CrossingRec {
    /// Incoming upper segment (descends through the crossing).
    pub in_upper: usize,
    /// Incoming lower segment (ascends through the crossing).
    pub in_lower: usize,
    pub out_upper: usize,
    pub out_lower: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) struct CuspRec {
    pub upper: usize,
    pub lower: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(super) struct Segment;

pub(super) fn trace(front: &PlatFront) -> FrontTrace {
    let mut segments: Vec<Segment> = Vec::new();
    let mut crossings = Vec::new();
    let mut left_cusps = Vec::new();
    let mut right_cusps = Vec::new();
    let mut strands: Vec<usize> = Vec::new(); // open segment per position (top = 0)
    let mut new_segment = || -> usize {
        segments.push(Segment);
        segments.len() - 1
    };
    for event in &front.events {
        match *event {
            PlatEvent::CuspOpen(i) => {
                let upper = new_segment();
                let lower = new_segment();
                left_cusps.push(CuspRec { upper, lower });
                strands.insert(i - 1, lower);
                strands.insert(i - 1, upper);
            }
            PlatEvent::Cross(i) => {
                let in_upper = strands[i - 1];
                let in_lower = strands[i];
                let out_upper = new_segment();
                let out_lower = new_segment();
                crossings.push(CrossingRec {
                    in_upper,
                    in_lower,
                    out_upper,
                    out_lower,
                });
                // The descending strand moves to position i+1 and vice versa.
                strands[i - 1] = out_upper;
                strands[i] = out_lower;
            }
            PlatEvent::CuspClose(i) => {
                let upper = strands[i - 1];
                let lower = strands[i];
                right_cusps.push(CuspRec { upper, lower });
                strands.drain(i - 1..=i);
            }
        }
    }
    debug_assert!(strands.is_empty());
    FrontTrace {
        segments,
        crossings,
        left_cusps,
        right_cusps,
    }
}

/// Connectivity of the front curve: each segment end is glued either through
/// a crossing (the strand passes straight through) or at a cusp (fold).
struct Curve {
    /// next[(seg, heading_east)] -> (segment, heading_east)
    next: Vec<[(usize, bool); 2]>,
}

fn curve(tr: &FrontTrace) -> Curve {
    let n = tr.segments.len();
    let mut next = vec![[(usize::MAX, true); 2]; n];
    // Walking east off segment s continues on next[s][1]; west on next[s][0].
    for c in &tr.crossings {
        // in_upper -> out_lower (descending), in_lower -> out_upper.
        next[c.in_upper][1] = (c.out_lower, true);
        next[c.out_lower][0] = (c.in_upper, false);
        next[c.in_lower][1] = (c.out_upper, true);
        next[c.out_upper][0] = (c.in_lower, false);
    }
    for cusp in &tr.left_cusps {
        // West ends meet: leaving west on one branch returns east on the other.
        next[cusp.upper][0] = (cusp.lower, true);
        next[cusp.lower][0] = (cusp.upper, true);
    }
    for cusp in &tr.right_cusps {
        next[cusp.upper][1] = (cusp.lower, false);
        next[cusp.lower][1] = (cusp.upper, false);
    }
    Curve { next }
}

/// Component label per segment, by first-appearance order.
pub(super) fn components(tr: &FrontTrace) -> Vec<usize> {
    let curve = curve(tr);
    let n = tr.segments.len();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut state = (start, true);
        loop {
            label[state.0] = count;
            state = curve.next[state.0][usize::from(state.1)];
            if state.0 == start && state.1 {
                break;
            }
        }
        count += 1;
    }
    label
}

/// Thurston-Bennequin and rotation number of a single-component front:
/// tb = writhe - #right cusps, rot = (down cusps - up cusps) / 2, with cusp
/// directions read off from a traversal orientation. The orientation starts
/// eastward on the upper branch of the first cusp.
pub fn classical_invariants(front: &PlatFront) -> Result<(i64, i64), FrontError> {
    classical_invariants_from(front, (0, true))
}

/// Same as [`classical_invariants`] with an explicit starting segment and
/// direction for the orienting traversal. Reflecting the front maps the
/// first cusp's upper branch to its lower branch (segment 1), so the
/// mirrored front traversed from (1, east) carries the transported
/// orientation, under which the rotation number negates.
pub fn classical_invariants_from(
    front: &PlatFront,
    start: (usize, bool),
) -> Result<(i64, i64), FrontError> {
    let tr = trace(front);
    let labels = components(&tr);
    let n_components = labels.iter().copied().max().map_or(0, |m| m + 1);
    if n_components != 1 {
        return Err(FrontError::MultiComponent(n_components));
    }

    // eastward[s] records the traversal direction of each segment.
    let curve = curve(&tr);
    let mut eastward = vec![true; tr.segments.len()];
    let mut state = start;
    loop {
        eastward[state.0] = state.1;
        state = curve.next[state.0][usize::from(state.1)];
        if state == start {
            break;
        }
    }

    let mut writhe: i64 = 0;
    for c in &tr.crossings {
        // Positive exactly when the two strands run in the same x-direction.
        if eastward[c.in_upper] == eastward[c.in_lower] {
            writhe += 1;
        } else {
            writhe -= 1;
        }
    }

    let mut down: i64 = 0;
    let mut up: i64 = 0;
    // A cusp is traversed downward when the walk arrives on the upper branch.
    for cusp in &tr.left_cusps {
        // Arrival at a left cusp is westward travel on a branch.
        if !eastward[cusp.upper] {
            down += 1;
        } else {
            up += 1;
        }
    }
    for cusp in &tr.right_cusps {
        if eastward[cusp.upper] {
            down += 1;
        } else {
            up += 1;
        }
    }
    let tb = writhe - tr.right_cusps.len() as i64;
    let rot = (down - up) / 2;
    Ok((tb, rot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn unknot_parses() {
        let f = parse_plat("O1 C1").unwrap();
        assert_eq!(
            f.events,
            vec![PlatEvent::CuspOpen(1), PlatEvent::CuspClose(1)]
        );
    }

    #[test]
    fn trefoil_parses() {
        let f = parse_plat("O1 O1 X2 X2 X2 C1 C1").unwrap();
        assert_eq!(f.events.len(), 7);
    }

    #[test]
    fn strand_violation_is_positioned() {
        let err = parse_plat("O1 X1 C2").unwrap_err();
        match err {
            FrontError::BadEvent { index, event, .. } => {
                assert_eq!(index, 2);
                assert_eq!(event, "C2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_token_is_positioned() {
        let err = parse_plat("O1 Q3 C1").unwrap_err();
        match err {
            FrontError::Parse { offset, token, .. } => {
                assert_eq!(offset, 3);
                assert_eq!(token, "Q3");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbalanced_front_is_rejected() {
        assert!(parse_plat("O1").is_err());
        assert!(parse_plat("O1 C1 C1").is_err());
        assert!(parse_plat("").is_err());
    }

    #[test]
    fn classical_invariants_of_bundled_fronts() {
        for (id, tb, rot) in [
            ("unknot", -1, 0),
            ("trefoil", 1, 0),
            ("stab_unknot", -3, 0),
        ] {
            let plat = library::entry(id).unwrap().plat;
            let f = parse_plat(plat).unwrap();
            assert_eq!(classical_invariants(&f).unwrap(), (tb, rot), "{id}");
        }
    }

    #[test]
    fn single_stabilization_has_rot_one_and_mirror_negates() {
        let f = parse_plat("O1 X1 C1").unwrap();
        let (tb, rot) = classical_invariants(&f).unwrap();
        assert_eq!(tb, -2);
        assert_eq!(rot.abs(), 1);
        // Transported orientation: the mirror sends the upper branch of the
        // first cusp to the lower one, i.e. segment 1.
        let (tbm, rotm) = classical_invariants_from(&f.mirrored(), (1, true)).unwrap();
        assert_eq!(tbm, -2);
        assert_eq!(rotm, -rot);
    }

    #[test]
    fn mirror_is_an_involution_and_negates_rot() {
        for id in ["unknot", "trefoil", "chekanov_a", "chekanov_b", "stab_unknot"] {
            let f = parse_plat(library::entry(id).unwrap().plat).unwrap();
            assert_eq!(f.mirrored().mirrored(), f);
            let (tb, rot) = classical_invariants(&f).unwrap();
            let (tbm, rotm) = classical_invariants_from(&f.mirrored(), (1, true)).unwrap();
            assert_eq!((tbm, rotm), (tb, -rot));
        }
    }

    #[test]
    fn multi_component_is_rejected() {
        // Two disjoint unknots.
        let f = parse_plat("O1 C1 O1 C1").unwrap();
        assert_eq!(
            classical_invariants(&f),
            Err(FrontError::MultiComponent(2))
        );
    }
}
