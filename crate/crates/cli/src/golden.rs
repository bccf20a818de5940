use serde::{Deserialize, Serialize};

use arrgroup::arrangement::{auto_family, Arrangement};
use arrgroup::presentation::{injectivity_test, projectivized_injectivity, randell_presentation, InjectivityOutcome};
use arrgroup::topology::{cokernel_rank, finiteness_type};

/// Summary recorded for each corpus entry; `n/a` marks analyses the entry does not admit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenOutputs {
    pub name: String,
    pub flats: Vec<String>,
    pub cokernel_rank: Option<usize>,
    pub finiteness: String,
    pub injectivity: String,
}

impl GoldenOutputs {
    pub fn to_text(&self) -> String {
        format!(
            "flats: {}\ncokernel rank: {}\nfiniteness: {}\ninjectivity: {}\n",
            self.flats.join(" "),
            self.cokernel_rank.map_or("n/a".to_string(), |r| r.to_string()),
            self.finiteness,
            self.injectivity
        )
    }
}

fn verdict(o: &InjectivityOutcome) -> String {
    match o {
        InjectivityOutcome::Certified(_) => "CERTIFIED".into(),
        InjectivityOutcome::Inconclusive(_) => "INCONCLUSIVE".into(),
    }
}

/// Recomputes the golden outputs of `a` with the automatic family.
pub fn golden_outputs(a: &Arrangement) -> arrgroup::Result<GoldenOutputs> {
    let x = auto_family(a);
    let injectivity = if a.ambient_dim() == 2 {
        verdict(&injectivity_test(a, &x, &randell_presentation(a)?)?)
    } else if a.is_central() && a.rank() == 3 {
        verdict(&projectivized_injectivity(a, &x, None)?.outcome)
    } else {
        "n/a".into()
    };
    Ok(GoldenOutputs {
        name: a.name().to_string(),
        flats: x.display(a),
        cokernel_rank: cokernel_rank(a, &x).ok().map(|r| r.rank),
        finiteness: finiteness_type(a, &x).map_or_else(|_| "n/a".into(), |r| r.verdict),
        injectivity,
    })
}
