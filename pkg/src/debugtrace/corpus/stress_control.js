function classify(n) {
  if (n < 0) {
    return "negative";
  } else if (n === 0) {
    return "zero";
  }
  if (n % 2 === 0)
    return "even";
  else
    return "odd";
}

function spin(limit) {
  var ticks = 0;
  while (ticks < limit) {
    ticks += 1;
  }
  for (;;) {
    return ticks;
  }
}

function countdown(n) {
  var log = [];
  for (var i = n; i > 0; i -= 1) {
    log[log.length] = i;
  }
  return log;
}

function scanWhileTrue(xs) {
  var i = 0;
  for (; i < xs.length;) {
    i += 1;
  }
  for (var j = 0; ; j += 1) {
    if (j > i) {
      return j;
    }
  }
}

{
  var blockScoped = classify(3);
  blockScoped = spin(2) + countdown(1).length + scanWhileTrue([1]);
}
