//! Writes the coin channel to JSON, reads it back and compares.

use sdwtc::gallery::{coin_aux, coin_channel, emit_aux_spec, emit_channel_spec, parse_aux_spec, parse_channel_spec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = coin_channel();
    let text = emit_channel_spec(&w);
    let back = parse_channel_spec(&text)?;
    println!("channel round trip identical: {}", back == w);
    let a = coin_aux();
    let back = parse_aux_spec(&emit_aux_spec(&a))?;
    println!("aux round trip identical: {}", back == a);
    println!("{}", &text[..text.find("\"channel\"").unwrap_or(text.len())]);
    Ok(())
}
