/** Angle inputs accept plain numbers and pi expressions.
 *
 * Accepted forms: "1.57", "pi", "-pi", "pi/2", "2pi/3", "3*pi/4",
 * "0.5pi", and the Unicode "π" spelling of any of those. Displayed
 * values round to two decimals, so "pi/2" shows up as 1.57.
 */

const PI_FORM =
  /^\s*([+-]?)\s*(\d+(?:\.\d+)?|\.\d+)?\s*\*?\s*(pi|π)?\s*(?:\/\s*(\d+(?:\.\d+)?|\.\d+))?\s*$/i;

export function parseAngle(text: string): number | null {
  const m = PI_FORM.exec(text);
  if (m === null) return null;
  const [, sign, coefficient, pi, divisor] = m;
  if (coefficient === undefined && pi === undefined) return null;
  let value = coefficient === undefined ? 1 : Number(coefficient);
  if (pi !== undefined) value *= Math.PI;
  if (divisor !== undefined) {
    const d = Number(divisor);
    if (d === 0) return null;
    value /= d;
  }
  return sign === "-" ? -value : value;
}

export function displayAngle(value: number): string {
  return (Math.round(value * 100) / 100).toFixed(2);
}
