//! The source queries, decided end to end.

use stewart::automata::enumerate;
use stewart::prover::Session;

#[test]
fn pal_lengths_are_zero_through_seven() {
    let mut session = Session::new();
    session
        .define(
            "pal",
            "?lsd_3 Et,i Aj (j<n) => TP[t][i+j]=TP[t][(i+n)-(j+1)]",
            None,
        )
        .unwrap();
    let pal = session.resolve_named("pal").unwrap();
    assert_eq!(pal.vars, vec!["n"]);
    let values = enumerate(&pal.dfa, 9);
    let got: Vec<u64> = values.into_iter().map(|v| v[0]).collect();
    assert_eq!(got, vec![0, 1, 2, 3, 4, 5, 6, 7]);
}

#[test]
fn hascube_is_false() {
    let session = Session::new();
    let value = session
        .eval_closed("?lsd_3 Ei,p,t p>=1 & Aj (j<2*p) => TP[t][i+j]=TP[t][i+j+p]")
        .unwrap();
    assert!(!value);
}

#[test]
fn arithprog_is_false() {
    let session = Session::new();
    let value = session
        .eval_closed(
            "?lsd_3 Et,i,m (m>=1) & TP[t][i]=TP[t][i+2*m] & \
             TP[t][i]=TP[t][i+4*m] & TP[t][i+m]=TP[t][i+3*m] & TP[t][i]!=TP[t][i+m]",
        )
        .unwrap();
    assert!(!value);
}

#[test]
fn faceq_then_squareorder() {
    let mut session = Session::new();
    session
        .define(
            "faceq",
            "?lsd_3 Ak (k<n) => TP[t][i+k]=TP[t][j+k]",
            None,
        )
        .unwrap();
    let faceq = session.resolve_named("faceq").unwrap();
    assert_eq!(faceq.vars, vec!["i", "j", "n", "t"]);
    eprintln!("faceq: {} states", faceq.dfa.num_states());

    session
        .define("squareorder", "?lsd_3 Et,i (n>=1) & $faceq(i,i+n,n,t)", None)
        .unwrap();
    let so = session.resolve_named("squareorder").unwrap();
    let got: Vec<u64> = enumerate(&so.dfa, 9).into_iter().map(|v| v[0]).collect();
    let mut expect = Vec::new();
    let mut p = 1u64;
    while p <= 6561 {
        expect.push(p);
        expect.push(2 * p);
        p *= 3;
    }
    expect.sort();
    expect.retain(|&n| n <= 3u64.pow(9) - 1);
    // accepted values up to padded length 9
    let max = *got.last().unwrap();
    let expect: Vec<u64> = expect.into_iter().filter(|&n| n <= max).collect();
    assert_eq!(got, expect);
}

#[test]
fn critexp_is_true() {
    let mut session = Session::new();
    session
        .define("faceq", "?lsd_3 Ak (k<n) => TP[t][i+k]=TP[t][j+k]", None)
        .unwrap();
    session
        .define(
            "boolean",
            "?lsd_3 Ak (k<n) => (TP[t][i+k]=@0|TP[t][i+k]=@1)",
            None,
        )
        .unwrap();
    let value = session
        .eval_closed(
            "?lsd_3 At,x,p ($link(x,t) & p=x/27 & x>=81) => \
             Ei i+3*p<=x & $boolean(i,3*p-1,t) & $faceq(i,i+p,2*p-1,t)",
        )
        .unwrap();
    assert!(value);
}

#[test]
fn xxyyxx_is_false() {
    let session = Session::new();
    let value = session
        .eval_closed(
            "?lsd_3 Et,i,m,n (m>=1) & \
             (Aj (j<m) => TP[t][i+j]=TP[t][i+j+m]) & \
             (Aj (j<2*m) => TP[t][i+j]=TP[t][i+j+2*m+2*n]) & \
             (Aj (j<n) => TP[t][i+j+2*m]=TP[t][i+j+2*m+n])",
        )
        .unwrap();
    assert!(!value);
}
