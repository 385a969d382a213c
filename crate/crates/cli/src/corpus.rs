//! Built-in sessions.

use crate::session::{parse_session, SessionFile};

const SEC6: &str = "\
# 2-dimensional hypersurface with the Ulrich ideal (x, y, z^2)
[ring]
char = 32003
vars = x, y, z
weights = 2, 2, 1
relations = x^2+y^2+z^4
dim = 2

[ideal I]
gens = x, y, z^2
Q = x, y

[ideal m]
gens = x, y, z
Q = x, z

[module ImPsi]
kind = submodule
matrix = -z^2, 0, -y, x; 0, -z^2, x, y; x, y, 0, z^2

[module ImPhi]
kind = submodule
matrix = -z^2, 0, -y, x; 0, -z^2, x, y; -y, x, z^2, 0; x, y, 0, z^2

[module R]
kind = free
rank = 1
";

const EX_D1S1: &str = "\
[ring]
char = 32003
vars = z1, z2
relations = z1^2+z2^2
dim = 1

[ideal I]
gens = z1, z2
Q = z2
";

const EX_D1S2: &str = "\
[ring]
char = 32003
vars = x, y
relations = x^2+y^4
dim = 1

[ideal I]
gens = x, y^2
Q = x

[module R]
kind = free
rank = 1
";

const EX_D2S2: &str = "\
[ring]
char = 32003
vars = z1, z2, z3
weights = 2, 2, 1
relations = z1^2+z2^2+z3^4
dim = 2

[ideal I]
gens = z1, z2, z3^2
Q = z1, z2
";

const EX_D2S3: &str = "\
# odd branch s = 2t + 1 with t = 1, reduction (z2, z3^t)
[ring]
char = 32003
vars = z1, z2, z3
weights = 3, 3, 1
relations = z1^2+z2^2+z3^6
dim = 2

[ideal I]
gens = z1, z2, z3^3
Q = z2, z3
";

const EX_D2S3_ALT: &str = "\
# same ideal with the reduction (z2, z3^s)
[ring]
char = 32003
vars = z1, z2, z3
weights = 3, 3, 1
relations = z1^2+z2^2+z3^6
dim = 2

[ideal I]
gens = z1, z2, z3^3
Q = z2, z3^3
";

const EX_I: &str = "\
# f, g, h = x, y, z
[ring]
char = 32003
vars = x, y, z
relations = x^2-y*z, y^2-z*x, z^2-x*y
dim = 1

[ideal I]
gens = x, y, z
Q = x

[module R]
kind = free
rank = 1
";

const REGULAR: &str = "\
[ring]
char = 32003
vars = x
dim = 1

[ideal m]
gens = x
Q = x

[module R]
kind = free
rank = 1
";

pub const CORPUS_IDS: &[&str] = &["sec6", "ex2.6ii-d1s1", "ex2.6ii-d1s2", "ex2.6ii-d2s2", "ex2.6ii-d2s3", "ex2.6ii-d2s3-alt", "ex2.6i", "regular-k[x]"];

pub fn corpus_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "sec6" => SEC6,
        "ex2.6ii-d1s1" => EX_D1S1,
        "ex2.6ii-d1s2" | "ex5.17" => EX_D1S2,
        "ex2.6ii-d2s2" => EX_D2S2,
        "ex2.6ii-d2s3" => EX_D2S3,
        "ex2.6ii-d2s3-alt" => EX_D2S3_ALT,
        "ex2.6i" => EX_I,
        "regular-k[x]" => REGULAR,
        _ => return None,
    })
}

pub fn corpus_session(id: &str) -> Option<SessionFile> {
    corpus_text(id).map(|t| parse_session(t).expect("built-in session parses"))
}

pub fn builtin_corpus() -> Vec<(&'static str, SessionFile)> {
    CORPUS_IDS.iter().map(|&id| (id, corpus_session(id).unwrap())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        let all = builtin_corpus();
        assert_eq!(all.len(), CORPUS_IDS.len());
        let sec6 = corpus_session("sec6").unwrap();
        assert_eq!(sec6.modules.len(), 3);
        assert!(corpus_session("nope").is_none());
    }
}
