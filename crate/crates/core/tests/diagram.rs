use chowq_core::diagram::{pyramid_symbols, render_pyramid};
use chowq_core::structure::SplittingData;
use chowq_core::Quadric;

fn ascii(rows: &[String]) -> Vec<String> {
    rows.iter()
        .map(|r| {
            r.chars()
                .map(|c| match c {
                    '∘' => 'o',
                    '∗' => '*',
                    '●' => '@',
                    other => other,
                })
                .collect()
        })
        .collect()
}

#[test]
fn small_pyramid_skeleton() {
    let rows = ascii(&pyramid_symbols(Quadric::new(8), None, None).unwrap());
    let expected = [
        "o",
        "oo",
        "ooo",
        "oooo",
        "*ooooo*",
        "**oooo**",
        "***ooo***",
        "****oo****",
        "*****o*****",
    ];
    assert_eq!(rows, expected);
}

#[test]
fn big_pyramid_shell_triangles() {
    let s = SplittingData::new(vec![4, 3, 5, 2]).unwrap();
    let rows = ascii(&pyramid_symbols(Quadric::new(27), None, Some(&s)).unwrap());
    assert_eq!(rows.len(), 28);
    for (i, r) in rows.iter().take(14).enumerate() {
        assert_eq!(r, &"o".repeat(i + 1));
    }
    let tail = [
        "*ooooooooooooo*",
        "**oooooooooooo**",
        "***ooooooooooo***",
        "****oooooooooo****",
        "*****ooooooooo*****",
        "******oooooooo******",
        "*******ooooooo*******",
        "********oooooo********",
        "*********ooooo*********",
        "*******@**oooo**@*******",
        "@******@@**ooo**@@******@",
        "@@**@**@@@**oo**@@@**@**@@",
        "@@@*@@*@@@@*@o@*@@@@*@@*@@@",
        "@@@@@@@@@@@@@@@@@@@@@@@@@@@@",
    ];
    assert_eq!(&rows[14..], &tail);
}

#[test]
fn rendering_is_centred() {
    let text = render_pyramid(Quadric::new(2), None, None).unwrap();
    assert_eq!(text, "    ∘\n ∗ ∘ ∘ ∗\n∗ ∗ ∘ ∗ ∗\n");
}
