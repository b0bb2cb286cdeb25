use online_ramsey::builder::{
    decompose_target, lemma_step, unit_creation_contract, Base, BuilderError, BuilderPlan, Class,
    Gadget, LemmaStep, Phase, Shape, UnitKind,
};
use online_ramsey::painter::ScriptedPainter;
use online_ramsey::{
    closed_form_budget, run_game, BlockingPainter, Builder, Color, ColoredGraph, ConstantPainter,
    ConstructiveBuilder, GameConfig, GameStatus, GameTrace, RandomPainter, Vertex,
};
use proptest::prelude::*;

use Color::{Blue, Red};

fn colors(s: &str) -> Vec<Color> {
    s.chars()
        .map(|c| match c {
            'r' => Red,
            'b' => Blue,
            _ => panic!("bad color {c}"),
        })
        .collect()
}

fn play(n: usize, painter: &mut dyn online_ramsey::Painter) -> (GameTrace, BuilderPlan) {
    let mut b = ConstructiveBuilder::new(n).unwrap();
    let t = run_game(&mut b, painter, GameConfig::for_target(n).unwrap()).unwrap();
    (t, b.plan().clone())
}

fn kinds(plan: &BuilderPlan) -> Vec<Option<UnitKind>> {
    plan.units.iter().map(Gadget::unit_kind).collect()
}

#[test]
fn decomposition_examples() {
    let d = decompose_target(10).unwrap();
    assert_eq!((d.base, d.lemma_count, d.budget), (Base::FiveK(2), 0, 13));
    let d = decompose_target(12).unwrap();
    assert_eq!(
        (d.base, d.lemma_count, d.budget),
        (Base::FiveKPlus2(2), 0, 16)
    );
    let d = decompose_target(9).unwrap();
    assert_eq!(
        (d.base, d.lemma_count, d.budget),
        (Base::SmallBase(5), 1, 12)
    );
    let d = decompose_target(18).unwrap();
    assert_eq!((d.base, d.lemma_count, d.budget), (Base::FiveK(2), 2, 25));
    assert_eq!(decompose_target(3), Err(BuilderError::TargetTooSmall(3)));
    assert_eq!(
        ConstructiveBuilder::new(2).unwrap_err(),
        BuilderError::TargetTooSmall(2)
    );
}

#[test]
fn residue_routing() {
    for n in 4..=2000 {
        let d = decompose_target(n).unwrap();
        assert_eq!(d.base.order() + 4 * d.lemma_count, n);
        assert_eq!(d.budget, d.base.budget() + 6 * d.lemma_count);
        assert_eq!(d.budget, closed_form_budget(n));
        match d.base {
            Base::FiveK(k) => assert!(k >= 2 && d.base.order() == 5 * k),
            Base::FiveKPlus2(k) => assert!(k >= 2 && d.base.order() == 5 * k + 2),
            Base::SmallBase(n0) => assert!((4..=7).contains(&n0)),
        }
        let want = match n % 5 {
            0 | 2 => 0,
            4 | 1 => 1,
            _ => 2,
        };
        if n >= 16 {
            assert_eq!(d.lemma_count, want, "n = {n}");
        }
    }
}

#[test]
fn first_edges_build_a_fresh_p3() {
    let b = ConstructiveBuilder::new(10).unwrap();
    let first = b.replay(&[]).unwrap();
    assert_eq!(first.edge, (0, 1));
    assert_eq!(first.plan.phase, Phase::UnitCreation);
    for c in Color::BOTH {
        let (u, v) = b.replay(&[c]).unwrap().edge;
        let shared = [u, v].iter().filter(|&&w| w == 0 || w == 1).count();
        assert_eq!(shared, 1);
        assert!(u.max(v) == 2, "second edge takes a fresh vertex");
    }
}

#[test]
fn red_p3_is_followed_by_a_forced_edge() {
    let b = ConstructiveBuilder::new(10).unwrap();
    let (a, bb) = b.replay(&[Red]).unwrap().edge;
    let r = b.replay(&[Red, Red]).unwrap();
    let (u, v) = r.edge;
    // v1 v2 = 0 1 and the second edge ends at v3
    let v3 = if a == 0 || a == 1 { bb } else { a };
    assert_eq!((u.min(v), u.max(v)), (v3.min(3), v3.max(3)));
    assert_eq!(r.plan.forced_rounds, vec![3]);
    assert_eq!(r.board.would_create_red_p4(u, v), Ok(true));
}

#[test]
fn unit_ii_becomes_g7() {
    let (t, plan) = play(10, &mut BlockingPainter);
    assert_eq!(kinds(&plan), vec![Some(UnitKind::II), Some(UnitKind::II)]);
    let g7: Vec<&Gadget> = plan
        .gadgets
        .iter()
        .filter(|g| g.shape == Shape::Gadget(online_ramsey::builder::GadgetKind(7)))
        .collect();
    assert_eq!(g7.len(), 2);
    for g in g7 {
        let (v1, v3, v4) = (g.role("v1"), g.role("v3"), g.role("v4"));
        let pos = |a: Vertex, b: Vertex| {
            t.rounds
                .iter()
                .position(|r| (r.u, r.v) == (a, b) || (r.v, r.u) == (a, b))
                .unwrap()
        };
        let (i, j) = (pos(v1, v4), pos(v3, v4));
        assert_eq!(j, i + 1, "v1v4 then v3v4");
        assert_eq!((t.rounds[i].color, t.rounds[j].color), (Blue, Blue));
        assert!(
            t.rounds[..i].iter().all(|r| r.u != v4 && r.v != v4),
            "v4 is fresh"
        );
        assert_eq!(g.path, vec![g.role("v0"), v1, v4, v3]);
    }
}

#[test]
fn unit_creation_examples() {
    let (_, plan) = play(10, &mut ConstantPainter(Blue));
    assert_eq!(kinds(&plan), vec![Some(UnitKind::I), Some(UnitKind::I)]);
    assert!(plan.bad.is_none());
    assert_eq!(unit_creation_contract(&plan, 2), Ok(()));

    let (_, plan) = play(10, &mut BlockingPainter);
    assert_eq!(kinds(&plan), vec![Some(UnitKind::II), Some(UnitKind::II)]);
    assert!(plan.bad.is_none());
    assert_eq!(unit_creation_contract(&plan, 2), Ok(()));
}

#[test]
fn two_brb_quadruples_merge_into_type_iv() {
    let b = ConstructiveBuilder::new(10).unwrap();
    let h = colors("rbrbrbb");
    let mid = b.replay(&h[..4]).unwrap();
    assert_eq!(
        mid.plan.bad.as_ref().and_then(Gadget::unit_kind),
        Some(UnitKind::VI)
    );
    let r = b.replay(&h).unwrap();
    assert_eq!(kinds(&r.plan), vec![Some(UnitKind::IV)]);
    assert!(r.plan.bad.is_none());
    assert_eq!(UnitKind::IV.weight(), 2);
    assert_eq!(unit_creation_contract(&r.plan, 2), Ok(()));
}

#[test]
fn unit_creation_contract_rejects() {
    let (_, plan) = play(10, &mut ConstantPainter(Blue));
    let mut short = plan.clone();
    short.units.pop();
    assert!(matches!(
        unit_creation_contract(&short, 2),
        Err(BuilderError::ContractViolation(_))
    ));
    let mut overlap = plan.clone();
    overlap.units[1] = overlap.units[0].clone();
    assert!(matches!(
        unit_creation_contract(&overlap, 2),
        Err(BuilderError::ContractViolation(_))
    ));
}

#[test]
fn g4_template_has_seven_c_minus_one_edges() {
    // v1 v2 v3 blue, red v0v1 and v3v4, forced v0v3 and v1v4
    let g = ColoredGraph::from_edges([
        (1, 2, Blue),
        (2, 3, Blue),
        (1, 0, Red),
        (3, 4, Red),
        (0, 3, Blue),
        (1, 4, Blue),
    ])
    .unwrap();
    let roles = [("v0", 0), ("v1", 1), ("v3", 3), ("v4", 4)];
    let gadget = Gadget::gadget(4, &roles, vec![0, 3, 2, 1, 4]);
    assert_eq!(gadget.matches_template(&g), Ok(()));
    assert_eq!(gadget.class(), Some(Class::Chain(1)));
    assert_eq!(g.edge_count(), 7 * 1 - 1);
    assert_eq!(g.longest_blue_path().0, 5);
    let mut broken = g.clone();
    broken.pop_edge();
    assert!(gadget.matches_template(&broken).is_err());
}

#[test]
fn two_g7_connectors_are_forced() {
    let (t, plan) = play(10, &mut BlockingPainter);
    let g7: Vec<&Gadget> = plan
        .gadgets
        .iter()
        .filter(|g| g.class() == Some(Class::Seven))
        .collect();
    assert_eq!(g7.len(), 2);
    let want = [
        (g7[0].role("v3"), g7[1].role("v0")),
        (g7[0].role("v2"), g7[1].role("v2")),
    ];
    let mut board = ColoredGraph::new();
    let mut hit = 0;
    for r in &t.rounds {
        board.ensure_vertex(r.u.max(r.v));
        if want
            .iter()
            .any(|&(a, b)| (a, b) == (r.u, r.v) || (b, a) == (r.u, r.v))
        {
            assert_eq!(board.would_create_red_p4(r.u, r.v), Ok(true));
            assert_eq!(r.color, Blue);
            assert!(plan.forced_rounds.contains(&r.index));
            hit += 1;
        }
        board.insert_edge(r.u, r.v, r.color).unwrap();
    }
    assert_eq!(hit, 2);
}

#[test]
fn all_type_i_units_finish_within_seven_k_minus_one() {
    for k in 2..=12 {
        let (t, plan) = play(5 * k, &mut ConstantPainter(Blue));
        assert!(plan
            .units
            .iter()
            .all(|u| u.unit_kind() == Some(UnitKind::I)));
        assert!(
            matches!(t.status, GameStatus::BlueWin(r) if r <= 7 * k - 1),
            "k = {k}: {}",
            t.status
        );
    }
}

#[test]
fn finished_plans_keep_their_ledgers() {
    for seed in 0..60 {
        for n in [10, 15, 20, 25, 12, 17, 22] {
            let mut p = RandomPainter::new(seed);
            let mut b = ConstructiveBuilder::new(n).unwrap();
            let t = run_game(&mut b, &mut p, GameConfig::for_target(n).unwrap()).unwrap();
            if !matches!(t.status, GameStatus::BlueWin(_)) {
                continue;
            }
            let history: Vec<Color> = t.rounds.iter().map(|r| r.color).collect();
            let plan = b.outcome(&history).unwrap();
            assert_eq!(plan.phase, Phase::Done);
            let k = n / 5;
            assert_eq!(plan.gadget_units(), k);
            assert!(plan.counts[1] + plan.counts[2] <= 1);
            // templates hold when connection starts; connectors may add
            // edges inside a gadget afterwards
            let at_connection = (0..=history.len())
                .map(|i| b.replay(&history[..i]))
                .find_map(|r| r.ok().filter(|r| r.plan.phase == Phase::Connection))
                .unwrap();
            let board = at_connection.board;
            for g in &plan.gadgets {
                assert_eq!(g.matches_template(&board), Ok(()), "{:?}", g.shape);
            }
            assert!(plan.path.len() >= n);
        }
    }
}

#[test]
fn stronger_blue_edge_claim_is_logged() {
    let mut logged = 0;
    let mut held = 0;
    for seed in 0..200 {
        let n = 10 + (seed as usize % 3) * 5;
        let mut b = ConstructiveBuilder::new(n).unwrap();
        let t = run_game(
            &mut b,
            &mut RandomPainter::new(seed),
            GameConfig::for_target(n).unwrap(),
        )
        .unwrap();
        let history: Vec<Color> = t.rounds.iter().map(|r| r.color).collect();
        if let Ok(plan) = b.outcome(&history) {
            if let Some(ok) = plan.all_blue_on_path {
                logged += 1;
                held += ok as usize;
            }
        }
    }
    eprintln!("every blue edge on the connected path: {held} of {logged} runs");
    assert!(logged > 0);
}

#[test]
fn board_mismatch_is_a_desync() {
    let mut b = ConstructiveBuilder::new(10).unwrap();
    let board = ColoredGraph::new();
    b.next_edge(&board, None).unwrap();
    let wrong = ColoredGraph::from_edges([(0, 2, Red)]).unwrap();
    let err = b.next_edge(&wrong, Some(Red)).unwrap_err();
    assert!(err.contains("desync"), "{err}");
}

fn blue_path(k: usize) -> (ColoredGraph, Vec<Vertex>) {
    let g = ColoredGraph::from_edges((0..k as Vertex - 1).map(|i| (i, i + 1, Blue))).unwrap();
    (g, (0..k as Vertex).collect())
}

/// Follows the script against `answers`, checking every move's legality.
fn lemma_run(k: usize, answers: &[Color]) -> (ColoredGraph, LemmaStep) {
    let (start, path) = blue_path(k);
    let mut board = start.clone();
    for i in 0..=answers.len() {
        let step = lemma_step(&start, &path, &answers[..i]).unwrap();
        match step {
            LemmaStep::Move(u, v) if i < answers.len() => {
                board.ensure_vertex(u.max(v));
                board.insert_edge(u, v, answers[i]).unwrap();
            }
            other => return (board, other),
        }
    }
    unreachable!()
}

#[test]
fn lemma_bbb_with_two_red_probes() {
    let k = 5;
    let (board, step) = lemma_run(k, &colors("bbbrr"));
    let LemmaStep::Move(u, v) = step else {
        panic!()
    };
    let (x, y) = (0, k as Vertex - 1);
    let (v1, v2, v3, v4) = (
        k as Vertex,
        k as Vertex + 1,
        k as Vertex + 2,
        k as Vertex + 3,
    );
    assert_eq!((u, v), (y, v4));
    assert_eq!(board.would_create_red_p4(u, v), Ok(true));
    let (_, done) = lemma_run(k, &colors("bbbrrb"));
    let LemmaStep::Done(p) = done else { panic!() };
    let mut want: Vec<Vertex> = (x..=y).collect();
    want.extend([v4, v3, v2, v1]);
    assert_eq!(p, want);
}

#[test]
fn lemma_brr_forces_three_edges() {
    let k = 4;
    let (_, done) = lemma_run(k, &colors("brrbbb"));
    let LemmaStep::Done(p) = done else { panic!() };
    let (v1, v2, v4, v5) = (4, 5, 7, 8);
    let mut want = vec![v1, v2, v5, v4];
    want.extend((0..k as Vertex).rev());
    assert_eq!(p, want);
}

/// Every reply sequence; returns (leaves, most rounds used).
fn lemma_exhaust(k: usize) -> (usize, usize) {
    fn go(k: usize, answers: &mut Vec<Color>, leaves: &mut usize, deepest: &mut usize) {
        let (board, step) = lemma_run(k, answers);
        match step {
            LemmaStep::Done(p) => {
                assert_eq!(p.len(), k + 4);
                assert!(p.windows(2).all(|w| board.color(w[0], w[1]) == Some(Blue)));
                *leaves += 1;
                *deepest = (*deepest).max(answers.len());
            }
            LemmaStep::Move(u, v) => {
                assert!(answers.len() < 6);
                for c in Color::BOTH {
                    let mut g = board.clone();
                    g.ensure_vertex(u.max(v));
                    g.insert_edge(u, v, c).unwrap();
                    answers.push(c);
                    if g.has_red_path_of_order(4) {
                        *leaves += 1;
                        *deepest = (*deepest).max(answers.len());
                    } else {
                        go(k, answers, leaves, deepest);
                    }
                    answers.pop();
                }
            }
        }
    }
    let (mut leaves, mut deepest) = (0, 0);
    go(k, &mut Vec::new(), &mut leaves, &mut deepest);
    (leaves, deepest)
}

#[test]
fn lemma_covers_every_reply() {
    for k in 2..=20 {
        let (leaves, deepest) = lemma_exhaust(k);
        assert!(leaves <= 64);
        assert!(deepest <= 6, "k = {k}");
    }
}

#[test]
fn lemma_needs_two_ends() {
    let mut g = ColoredGraph::new();
    g.add_vertex();
    assert!(matches!(
        lemma_step(&g, &[0], &[]),
        Err(BuilderError::PlanDesync(_))
    ));
}

#[test]
fn preamble_red_first_probe() {
    let b = ConstructiveBuilder::new(12).unwrap();
    let r = b.replay(&[Red]).unwrap();
    assert_eq!(r.plan.aside, Some((0, 1)));
    let mut p = ScriptedPainter::new(vec![Red], Blue);
    let (t, _) = play(12, &mut p);
    assert!(matches!(t.status, GameStatus::BlueWin(r) if r <= 16));
    let history: Vec<Color> = t.rounds.iter().map(|r| r.color).collect();
    let plan = b.outcome(&history).unwrap();
    assert_eq!(plan.aside, Some((0, 1)));
    assert!(plan.path.contains(&0) && plan.path.contains(&1));
}

#[test]
fn preamble_three_blues_then_two_blues_shrinks() {
    let b = ConstructiveBuilder::new(12).unwrap();
    let r = b.replay(&colors("bbbbb")).unwrap();
    let first = &r.plan.units[0];
    assert_eq!(first.unit_kind(), Some(UnitKind::I));
    assert_eq!(first.path.len(), 5);
    assert!(first
        .path
        .windows(2)
        .all(|w| r.board.color(w[0], w[1]) == Some(Blue)));
}

#[test]
fn preamble_mixed_answers_give_g13_to_g16() {
    let b = ConstructiveBuilder::new(12).unwrap();
    let mut seen = [false; 17];
    for start in ["bbbbr", "bbbrb"] {
        for tail in 0..16u32 {
            let mut h = colors(start);
            for i in 0..4 {
                h.push(if tail & (1 << i) != 0 { Blue } else { Red });
                let Ok(r) = b.replay(&h) else { break };
                let Some(g) = r.plan.gadgets.first() else {
                    continue;
                };
                let Shape::Gadget(kind) = g.shape else {
                    continue;
                };
                assert!((13..=16).contains(&kind.0));
                seen[kind.0 as usize] = true;
                assert!(r.board.edge_count() <= 9);
                assert_eq!(g.path.len(), 7);
                assert!(g
                    .path
                    .windows(2)
                    .all(|w| r.board.color(w[0], w[1]) == Some(Blue)));
                for end in [g.path[0], g.path[6]] {
                    assert!(r.board.color_degree(end, Red) > 0);
                }
                break;
            }
        }
    }
    assert!(seen[13..=16].iter().all(|&s| s), "{seen:?}");
}

fn check_forced(n: usize, painter: &mut dyn online_ramsey::Painter) {
    let (t, plan) = play(n, painter);
    let mut board = ColoredGraph::new();
    for r in &t.rounds {
        board.ensure_vertex(r.u.max(r.v));
        if plan.forced_rounds.contains(&r.index) {
            assert_eq!(
                board.would_create_red_p4(r.u, r.v),
                Ok(true),
                "n = {n}, round {}",
                r.index
            );
        }
        board.insert_edge(r.u, r.v, r.color).unwrap();
    }
}

#[test]
fn forced_edges_against_fixed_painters() {
    for n in 4..=60 {
        check_forced(n, &mut BlockingPainter);
        check_forced(n, &mut ConstantPainter(Blue));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forced_edges_are_forced(seed in any::<u64>(), n in 4usize..=45) {
        check_forced(n, &mut RandomPainter::new(seed));
    }

    #[test]
    fn blocking_games_keep_red_stars(n in 4usize..=80) {
        let (t, _) = play(n, &mut BlockingPainter);
        let mut board = ColoredGraph::new();
        for r in &t.rounds {
            board.ensure_vertex(r.u.max(r.v));
            board.insert_edge(r.u, r.v, r.color).unwrap();
            prop_assert!(board.red_is_star_forest());
        }
        prop_assert_eq!(t.status, GameStatus::BlueWin(closed_form_budget(n)));
    }
}
