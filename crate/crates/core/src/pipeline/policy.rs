use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Protocol {
    /// Joint physical + digital detection.
    P1,
    /// Unseen physical attacks.
    P2_1,
    /// Unseen digital attacks.
    P2_2,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [Protocol::P1, Protocol::P2_1, Protocol::P2_2];

    pub fn as_str(self) -> &'static str {
        match self {
            Protocol::P1 => "p1",
            Protocol::P2_1 => "p2.1",
            Protocol::P2_2 => "p2.2",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Protocol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', ".").as_str() {
            "p1" => Ok(Protocol::P1),
            "p2.1" => Ok(Protocol::P2_1),
            "p2.2" => Ok(Protocol::P2_2),
            _ => Err(format!(
                "unknown protocol `{s}` (expected p1, p2.1 or p2.2)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Augmentation {
    Spsc,
    Sdsc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolPolicy {
    pub protocol: Protocol,
    pub augmentations: Vec<Augmentation>,
}

impl ProtocolPolicy {
    pub fn uses(&self, aug: Augmentation) -> bool {
        self.augmentations.contains(&aug)
    }
}

/// P1 uses both families, P2.1 only the physical one, P2.2 only the digital one.
pub fn policy_for_protocol(protocol: Protocol) -> ProtocolPolicy {
    let augmentations = match protocol {
        Protocol::P1 => vec![Augmentation::Spsc, Augmentation::Sdsc],
        Protocol::P2_1 => vec![Augmentation::Spsc],
        Protocol::P2_2 => vec![Augmentation::Sdsc],
    };
    ProtocolPolicy {
        protocol,
        augmentations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn protocol_names_roundtrip() {
        for p in Protocol::ALL {
            assert_eq!(p.as_str().parse::<Protocol>().unwrap(), p);
        }
        assert_eq!("P2_1".parse::<Protocol>().unwrap(), Protocol::P2_1);
        assert!("p3".parse::<Protocol>().is_err());
    }
}
