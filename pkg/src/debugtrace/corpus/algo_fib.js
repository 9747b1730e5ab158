function fib(n) {
  if (n <= 1) {
    return n;
  }
  var a = 0;
  var b = 1;
  for (var i = 2; i <= n; i = i + 1) {
    var next = a + b;
    a = b;
    b = next;
  }
  return b;
}

module.exports = { fib: fib };
