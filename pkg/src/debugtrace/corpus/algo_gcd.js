function gcd(a, b) {
  while (b !== 0) {
    var t = b;
    b = a % b;
    a = t;
  }
  return a;
}

function lcm(a, b) {
  if (a === 0 || b === 0) {
    return 0;
  }
  return a / gcd(a, b) * b;
}

module.exports = { gcd: gcd, lcm: lcm };
