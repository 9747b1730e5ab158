function toFahrenheit(celsius) {
  return celsius * 9 / 5 + 32;
}

function toCelsius(fahrenheit) {
  return (fahrenheit - 32) * 5 / 9;
}

function describe(celsius) {
  if (celsius <= 0) {
    return "freezing";
  } else if (celsius < 15) {
    return "cold";
  } else if (celsius < 25) {
    return "mild";
  } else {
    return "hot";
  }
}

module.exports = { toFahrenheit: toFahrenheit, toCelsius: toCelsius, describe: describe };
