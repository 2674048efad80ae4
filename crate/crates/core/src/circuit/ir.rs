/// One interferometer element. Angles are in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Beamsplitter { i: usize, j: usize, theta: f64, phi: f64 },
    PhaseShifter { i: usize, phi: f64 },
    Inject { mode: usize, count: u32 },
    /// Constraints are kept in source order so duplicates can be diagnosed.
    Postselect { constraints: Vec<(usize, u32)> },
}

impl Element {
    /// Mode indices the element refers to, in declaration order.
    pub fn modes(&self) -> Vec<usize> {
        match self {
            Element::Beamsplitter { i, j, .. } => vec![*i, *j],
            Element::PhaseShifter { i, .. } => vec![*i],
            Element::Inject { mode, .. } => vec![*mode],
            Element::Postselect { constraints } => constraints.iter().map(|(m, _)| *m).collect(),
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Element::Beamsplitter { .. } => "bs",
            Element::PhaseShifter { .. } => "ps",
            Element::Inject { .. } => "inject",
            Element::Postselect { .. } => "postselect",
        }
    }

    /// Bitwise equality: angles compare by bit pattern, so `-0.0 != 0.0`.
    pub fn bit_eq(&self, other: &Element) -> bool {
        use Element::*;
        match (self, other) {
            (Beamsplitter { i, j, theta, phi }, Beamsplitter { i: i2, j: j2, theta: t2, phi: p2 }) => {
                i == i2 && j == j2 && theta.to_bits() == t2.to_bits() && phi.to_bits() == p2.to_bits()
            }
            (PhaseShifter { i, phi }, PhaseShifter { i: i2, phi: p2 }) => i == i2 && phi.to_bits() == p2.to_bits(),
            (a, b) => a == b,
        }
    }
}

/// A parsed interferometer: a mode count and an ordered element list.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CircuitIR {
    pub name: String,
    pub mode_count: usize,
    pub elements: Vec<Element>,
}

impl CircuitIR {
    pub fn new(name: impl Into<String>, mode_count: usize) -> Self {
        Self { name: name.into(), mode_count, elements: Vec::new() }
    }

    pub fn push(mut self, element: Element) -> Self {
        self.elements.push(element);
        self
    }

    pub fn bs(self, i: usize, j: usize, theta: f64, phi: f64) -> Self {
        self.push(Element::Beamsplitter { i, j, theta, phi })
    }

    pub fn ps(self, i: usize, phi: f64) -> Self {
        self.push(Element::PhaseShifter { i, phi })
    }

    pub fn inject(self, mode: usize, count: u32) -> Self {
        self.push(Element::Inject { mode, count })
    }

    pub fn postselect(self, constraints: &[(usize, u32)]) -> Self {
        self.push(Element::Postselect { constraints: constraints.to_vec() })
    }

    /// Structural equality with bit-exact angles.
    pub fn bit_eq(&self, other: &CircuitIR) -> bool {
        self.name == other.name
            && self.mode_count == other.mode_count
            && self.elements.len() == other.elements.len()
            && self.elements.iter().zip(&other.elements).all(|(a, b)| a.bit_eq(b))
    }

    pub fn total_injected(&self) -> u32 {
        self.elements
            .iter()
            .map(|e| match e {
                Element::Inject { count, .. } => *count,
                _ => 0,
            })
            .sum()
    }
}
