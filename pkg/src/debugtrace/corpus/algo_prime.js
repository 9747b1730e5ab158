function isPrime(n) {
  if (n < 2) {
    return false;
  }
  for (var d = 2; d * d <= n; d = d + 1) {
    if (n % d === 0) {
      return false;
    }
  }
  return true;
}

function primesBelow(limit) {
  var out = [];
  for (var n = 2; n < limit; n = n + 1) {
    if (isPrime(n)) {
      out[out.length] = n;
    }
  }
  return out;
}

module.exports = { isPrime: isPrime, primesBelow: primesBelow };
