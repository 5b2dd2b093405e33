//! Plain-text renderings for the terminal.

use std::fmt::Write;

use elections_core::montecarlo::RunSummary;
use elections_core::scenario::{toy_structure, ScenarioResult};
use elections_core::tally::Party;

fn pct(x: f64) -> String {
    format!("{:.2}%", 100.0 * x)
}

pub fn render_summary(s: &RunSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "trials {}  seed {}", s.trials, s.seed);
    let _ = writeln!(out);
    let _ = writeln!(out, "outcome     count  share");
    for code in ["WW", "WL", "LW", "LL", "DEGENERATE"] {
        let n = s.counts.get(code).copied().unwrap_or(0);
        let f = s.freq.get(code).copied().unwrap_or(0.0);
        let _ = writeln!(out, "{:<10} {:>6}  {}", code, n, pct(f));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "unpopular, House + Senate electors  {}", pct(s.unpopular_full));
    let _ = writeln!(out, "unpopular, House electors only      {}", pct(s.unpopular_house));
    let _ = writeln!(out, "unpopular, states-won limit         {}", pct(s.states_won_unpopular));
    let _ = writeln!(out, "Democratic electoral wins           {}", pct(s.dem_win_rate));
    let _ = writeln!(
        out,
        "exact elector splits                {} full, {} house",
        pct(s.tie_full),
        pct(s.tie_house)
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "Senate electors per state  unpopular  (of which splits)");
    for e in &s.senate_sweep {
        let _ = writeln!(out, "{:>25}  {:>9}  {}", e.k, pct(e.unpopular), pct(e.ties));
    }
    let h = &s.diff_histogram;
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "signed electoral differences of unpopular outcomes: {} positive, {} zero, {} negative",
        h.positive, h.zero, h.negative
    );
    for b in &h.bins {
        let _ = writeln!(out, "  [{:>4}, {:>4})  {}", b.lo, b.hi, b.count);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "popular winner vs California     carried    lost");
    for (label, c) in [("all outcomes", &s.california_crosstab), ("unpopular outcomes", &s.california_crosstab_unpopular)] {
        let _ = writeln!(out, "{}", label);
        let _ = writeln!(out, "  Democrat                  {:>10} {:>7}", c.democrat_carried, c.democrat_lost);
        let _ = writeln!(out, "  Republican                {:>10} {:>7}", c.republican_carried, c.republican_lost);
    }
    if s.degenerate > 0 {
        let _ = writeln!(out);
        let _ = writeln!(out, "degenerate trials (exact state or popular ties): {}", s.degenerate);
    }
    out
}

fn pair(p: Party, a: u32, b: u32) -> u32 {
    match p {
        Party::Democrat => a,
        Party::Republican => b,
    }
}

/// Per-state breakdown of one toy scenario with candidate A as the Democrat.
pub fn render_scenario(r: &ScenarioResult) -> String {
    let s = toy_structure();
    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", r.scenario.code, r.scenario.description);
    let _ = writeln!(
        out,
        "{:<8} {:>5} {:>5} {:>8} {:>8} {:>4} {:>4} {:>4} {:>4}",
        "state", "A%", "B%", "A votes", "B votes", "A H", "A S", "B H", "B S"
    );
    for i in 0..s.len() {
        let share = r.scenario.shares[i];
        let t = s.turnout()[i] as f64;
        let p = r.full.carried[i];
        let h = s.house_electors()[i];
        let _ = writeln!(
            out,
            "{:<8} {:>5.0} {:>5.0} {:>8.0} {:>8.0} {:>4} {:>4} {:>4} {:>4}",
            i + 1,
            100.0 * share,
            100.0 * (1.0 - share),
            share * t,
            (1.0 - share) * t,
            pair(p, h, 0),
            pair(p, 2, 0),
            pair(p, 0, h),
            pair(p, 0, 2),
        );
    }
    let f = &r.full;
    let _ = writeln!(
        out,
        "{:<8} {:>5} {:>5} {:>8.0} {:>8.0} {:>4} {:>4} {:>4} {:>4}",
        "total", "", "", f.dem_pop, f.rep_pop, f.dem_house, f.dem_senate, f.rep_house, f.rep_senate
    );
    let _ = writeln!(
        out,
        "H+S  A {} B {}   H only  A {} B {}   code {}",
        f.dem_electors, f.rep_electors, r.house.dem_electors, r.house.rep_electors, r.code
    );
    let mism = r.mismatches();
    if mism.is_empty() {
        let _ = writeln!(out, "matches the expected table");
    } else {
        let _ = writeln!(out, "MISMATCH in {}", mism.join(", "));
    }
    out
}
