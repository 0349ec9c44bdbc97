use std::collections::BTreeSet;

use skintone::EmojiCatalog;

/// Emoji_Modifier_Base entries of emoji-data.txt, version 5.0.
const EMOJI_DATA_5_0: &str = "\
261D          ; Emoji_Modifier_Base  #  1.1  [1] (☝️)       white up pointing index
26F9          ; Emoji_Modifier_Base  #  5.2  [1] (⛹️)       person with ball
270A..270B    ; Emoji_Modifier_Base  #  6.0  [2] (✊..✋)    raised fist..raised hand
270C..270D    ; Emoji_Modifier_Base  #  1.1  [2] (✌️..✍️)    victory hand..writing hand
1F385         ; Emoji_Modifier_Base  #  6.0  [1] (🎅)       Santa Claus
1F3C2..1F3C4  ; Emoji_Modifier_Base  #  6.0  [3] (🏂..🏄)    snowboarder..person surfing
1F3C7         ; Emoji_Modifier_Base  #  6.0  [1] (🏇)       horse racing
1F3CA         ; Emoji_Modifier_Base  #  6.0  [1] (🏊)       person swimming
1F3CB..1F3CC  ; Emoji_Modifier_Base  #  7.0  [2] (🏋️..🏌️)  person lifting weights..person golfing
1F442..1F443  ; Emoji_Modifier_Base  #  6.0  [2] (👂..👃)    ear..nose
1F446..1F450  ; Emoji_Modifier_Base  #  6.0 [11] (👆..👐)    backhand index pointing up..open hands
1F466..1F469  ; Emoji_Modifier_Base  #  6.0  [4] (👦..👩)    boy..woman
1F46E         ; Emoji_Modifier_Base  #  6.0  [1] (👮)       police officer
1F470..1F478  ; Emoji_Modifier_Base  #  6.0  [9] (👰..👸)    bride with veil..princess
1F47C         ; Emoji_Modifier_Base  #  6.0  [1] (👼)       baby angel
1F481..1F483  ; Emoji_Modifier_Base  #  6.0  [3] (💁..💃)    person tipping hand..woman dancing
1F485..1F487  ; Emoji_Modifier_Base  #  6.0  [3] (💅..💇)    nail polish..person getting haircut
1F4AA         ; Emoji_Modifier_Base  #  6.0  [1] (💪)       flexed biceps
1F574..1F575  ; Emoji_Modifier_Base  #  7.0  [2] (🕴️..🕵️)  man in business suit levitating..detective
1F57A         ; Emoji_Modifier_Base  #  9.0  [1] (🕺)       man dancing
1F590         ; Emoji_Modifier_Base  #  7.0  [1] (🖐️)       raised hand with fingers splayed
1F595..1F596  ; Emoji_Modifier_Base  #  7.0  [2] (🖕..🖖)    middle finger..vulcan salute
1F645..1F647  ; Emoji_Modifier_Base  #  6.0  [3] (🙅..🙇)    person gesturing NO..person bowing
1F64B..1F64F  ; Emoji_Modifier_Base  #  6.0  [5] (🙋..🙏)    person raising hand..folded hands
1F6A3         ; Emoji_Modifier_Base  #  6.0  [1] (🚣)       person rowing boat
1F6B4..1F6B6  ; Emoji_Modifier_Base  #  6.0  [3] (🚴..🚶)    person biking..person walking
1F6C0         ; Emoji_Modifier_Base  #  6.0  [1] (🛀)       person taking bath
1F6CC         ; Emoji_Modifier_Base  #  7.0  [1] (🛌)       person in bed
1F918         ; Emoji_Modifier_Base  #  8.0  [1] (🤘)       sign of the horns
1F919..1F91C  ; Emoji_Modifier_Base  #  9.0  [4] (🤙..🤜)    call me hand..right-facing fist
1F91E         ; Emoji_Modifier_Base  #  9.0  [1] (🤞)       crossed fingers
1F91F         ; Emoji_Modifier_Base  # 10.0  [1] (🤟)       love-you gesture
1F926         ; Emoji_Modifier_Base  #  9.0  [1] (🤦)       person facepalming
1F930         ; Emoji_Modifier_Base  #  9.0  [1] (🤰)       pregnant woman
1F931..1F932  ; Emoji_Modifier_Base  # 10.0  [2] (🤱..🤲)    breast-feeding..palms up together
1F933..1F939  ; Emoji_Modifier_Base  #  9.0  [7] (🤳..🤹)    selfie..person juggling
1F93D..1F93E  ; Emoji_Modifier_Base  #  9.0  [2] (🤽..🤾)    person playing water polo..person playing handball
1F9D1..1F9DD  ; Emoji_Modifier_Base  # 10.0 [13] (🧑..🧝)    adult..elf
";

fn expand(data: &str) -> BTreeSet<char> {
    let mut out = BTreeSet::new();
    for line in data.lines() {
        let field = line.split(';').next().unwrap().trim();
        let (lo, hi) = match field.split_once("..") {
            Some((a, b)) => (a, b),
            None => (field, field),
        };
        let lo = u32::from_str_radix(lo, 16).unwrap();
        let hi = u32::from_str_radix(hi, 16).unwrap();
        out.extend((lo..=hi).filter_map(char::from_u32));
    }
    out
}

#[test]
fn bundled_catalog_equals_property_listing() {
    let expected = expand(EMOJI_DATA_5_0);
    // the bracketed counts in the listing add up as well
    let bracket_total: usize = EMOJI_DATA_5_0
        .lines()
        .map(|l| {
            let inner = l.split('[').nth(1).unwrap().split(']').next().unwrap();
            inner.trim().parse::<usize>().unwrap()
        })
        .sum();
    assert_eq!(bracket_total, expected.len());
    assert_eq!(expected.len(), 102);

    let cat = EmojiCatalog::bundled();
    let got: BTreeSet<char> = cat
        .bases()
        .iter()
        .map(|b| {
            let mut it = b.chars();
            let c = it.next().unwrap();
            assert!(it.next().is_none(), "multi-code-point base {b:?}");
            c
        })
        .collect();
    assert_eq!(got, expected);
    assert!(cat.is_modifier_base("\u{1F44D}"));
    assert!(cat.is_modifier_base("\u{261D}\u{FE0F}"));
    assert!(!cat.is_modifier_base("\u{1F602}"));
}
